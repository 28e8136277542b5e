#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace fracbvp::detail {

// One tanh-sinh abscissa for the positive half-axis, in the logistic
// normalization on [0,1]:
//   sigma_lo = sigma(pi sinh tau)    distance to the right... (tau > 0 side)
//   sigma_hi = sigma(-pi sinh tau)   complementary distance
//   weight   = pi cosh(tau) sigma_lo sigma_hi
// The mirror node at -tau swaps sigma_lo/sigma_hi and keeps the weight.
struct TsNode {
    double sigma_lo;
    double sigma_hi;
    double weight;
};

// Per-level abscissa tables for the double-exponential rule: level 0 holds
// integer tau (0,1,2,... outward), level l >= 1 the odd multiples of 2^-l.
// Levels are refined incrementally. Built once, immutable thereafter.
class TsTables {
public:
    static const TsTables& instance();

    static constexpr int max_level = 10;

    const std::vector<TsNode>& level(int l) const { return levels_[l]; }

private:
    TsTables();
    std::vector<TsNode> levels_[max_level + 1];
};

struct TsOutcome {
    double value = 0.0;
    double error_estimate = 0.0;
    std::int64_t evaluations = 0;
    bool converged = false;
    bool nonfinite = false;
    double nonfinite_at = 0.0;
};

// Integrate f over [a,b] with the tanh-sinh rule. The integrand receives
// (x, x-a, b-x); the endpoint distances come straight from the node tables
// and are exact, so algebraic endpoint factors can be formed without
// cancellation. exp_lo/exp_hi are the declared algebraic exponents at the
// endpoints (> -1); they enter only the truncated-tail accounting.
//
// Deterministic: fixed tables, fixed serial summation order, Kahan sum.
template <typename F>
TsOutcome tanh_sinh(double a, double b, F&& f, double tolerance,
                    double exp_lo = 0.0, double exp_hi = 0.0) {
    TsOutcome out;
    const double width = b - a;
    if (width <= 0.0) {
        out.converged = true;
        return out;
    }

    const TsTables& tables = TsTables::instance();
    const double term_cut = 0.01 * tolerance;

    double sum = 0.0; // running Kahan sum of w*f over all levels so far
    double comp = 0.0;
    auto accumulate = [&](double term) {
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    };

    double tail_bound = 0.0;
    double previous = 0.0;
    double estimate = 0.0;

    auto eval_node = [&](double sigma_lo, double sigma_hi, double w) -> double {
        const double da = width * sigma_lo;
        const double db = width * sigma_hi;
        const double fx = f(a + da, da, db);
        ++out.evaluations;
        const double term = w * fx;
        if (!std::isfinite(term)) {
            out.nonfinite = true;
            out.nonfinite_at = a + da;
        }
        return term;
    };

    for (int l = 0; l <= TsTables::max_level && !out.nonfinite; ++l) {
        const double h = std::ldexp(1.0, -l);
        const std::vector<TsNode>& nodes = tables.level(l);

        int quiet = 0;
        bool exhausted = true;
        double last_term = 0.0;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            const TsNode& n = nodes[k];
            const double w = width * n.weight;
            double biggest = 0.0;
            if (l == 0 && k == 0) { // tau = 0, self-mirrored
                const double term = eval_node(n.sigma_lo, n.sigma_hi, w);
                accumulate(term);
                biggest = std::abs(term);
            } else {
                const double tp = eval_node(n.sigma_lo, n.sigma_hi, w);
                const double tm = eval_node(n.sigma_hi, n.sigma_lo, w);
                accumulate(tp);
                accumulate(tm);
                biggest = std::max(std::abs(tp), std::abs(tm));
            }
            if (out.nonfinite) return out;
            last_term = biggest;
            // Truncate the doubly-exponentially decaying tail once terms are
            // negligible twice in a row.
            if (biggest * h < term_cut) {
                if (++quiet >= 2) {
                    exhausted = false;
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        if (exhausted && last_term > 0.0) {
            // Ran off the end of the table with non-negligible terms: bound
            // the missing algebraic tail ~ C d^lambda via the last term.
            const double lam_min = std::min({exp_lo, exp_hi, 0.0});
            tail_bound = std::max(tail_bound, 4.0 * last_term * h / (1.0 + lam_min));
        }

        estimate = sum * h;
        if (l >= 2) {
            const double delta = std::abs(estimate - previous);
            out.error_estimate = delta + tail_bound;
            const double noise = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(estimate);
            if ((delta <= 0.5 * tolerance || delta <= noise) && tail_bound <= 0.5 * tolerance) {
                out.value = estimate;
                out.converged = true;
                return out;
            }
        }
        previous = estimate;
    }

    out.value = estimate;
    return out;
}

} // namespace fracbvp::detail
