#include "fracbvp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fracbvp/detail/tanh_sinh.hpp"
#include "fracbvp/problem.hpp"

namespace fracbvp {

SingularIntegrand::SingularIntegrand(std::function<double(double)> evaluator,
                                     double exponent_at_0, double exponent_at_1,
                                     std::optional<double> kink)
    : evaluator(std::move(evaluator)),
      exponent_at_0(exponent_at_0),
      exponent_at_1(exponent_at_1),
      kink(kink) {
    if (!(exponent_at_0 > -1.0 && exponent_at_1 > -1.0)) {
        std::ostringstream msg;
        msg << "endpoint exponents must exceed -1 (integral diverges otherwise); got "
            << exponent_at_0 << " and " << exponent_at_1;
        throw DomainError(msg.str());
    }
    if (kink && !(*kink > 0.0 && *kink < 1.0)) {
        throw DomainError("kink must lie strictly inside (0,1)");
    }
}

namespace {

detail::TsOutcome run_piece(const SingularIntegrand& g, double a, double b,
                            double tol, double exp_lo, double exp_hi) {
    auto f = [&](double x, double, double) { return g.evaluator(x); };
    return detail::tanh_sinh(a, b, f, tol, exp_lo, exp_hi);
}

} // namespace

QuadratureResult integrate(const SingularIntegrand& integrand, double tolerance) {
    if (!(tolerance > 0.0)) throw DomainError("integrate requires a positive tolerance");

    std::vector<detail::TsOutcome> pieces;
    if (integrand.kink) {
        const double k = *integrand.kink;
        pieces.push_back(run_piece(integrand, 0.0, k, 0.5 * tolerance,
                                   integrand.exponent_at_0, 0.0));
        pieces.push_back(run_piece(integrand, k, 1.0, 0.5 * tolerance, 0.0,
                                   integrand.exponent_at_1));
    } else {
        pieces.push_back(run_piece(integrand, 0.0, 1.0, tolerance,
                                   integrand.exponent_at_0, integrand.exponent_at_1));
    }

    QuadratureResult result{0.0, 0.0, 0};
    bool converged = true;
    for (const detail::TsOutcome& p : pieces) {
        if (p.nonfinite) {
            std::ostringstream msg;
            msg << "integrate: non-finite integrand sample at s = " << p.nonfinite_at;
            throw QuadratureError(msg.str(), result.value + p.value, p.error_estimate);
        }
        result.value += p.value;
        result.error_estimate += p.error_estimate;
        result.evaluations += p.evaluations;
        converged = converged && p.converged;
    }
    if (!converged) {
        throw QuadratureError("integrate: node budget exhausted before reaching tolerance",
                              result.value, result.error_estimate);
    }
    return result;
}

H1Report check_H1(FractionalOrder order, const WeightSpec& weight) {
    const double a = order.alpha();
    H1Report report{Admissibility::Inconclusive, false, {}};

    if (std::optional<double> lam = weight.declared_exponent_at_0()) {
        // integrand ~ s^(alpha-1+lambda); integrable iff alpha + lambda > 0
        report.analytic = true;
        const double beta = -*lam;
        report.status = beta < a ? Admissibility::Pass : Admissibility::Fail;
        std::ostringstream note;
        note << "declared exponent rule: beta = " << beta << (beta < a ? " < " : " >= ")
             << "alpha = " << a;
        report.tail.note = note.str();
        return report;
    }

    // Cauchy test on F(delta) = int_delta^1 s^(alpha-1) h(s) ds along
    // delta = 2^-k. Geometric decay of the increments is accepted as Pass;
    // finitely many samples cannot certify divergence, so everything else is
    // Inconclusive.
    auto tail_integral = [&](double lo) {
        auto f = [&](double x, double, double) {
            return std::pow(x, a - 1.0) * weight(x);
        };
        detail::TsOutcome out = detail::tanh_sinh(lo, 1.0, f, 1e-11);
        if (out.nonfinite) {
            std::ostringstream msg;
            msg << "check_H1: weight evaluation failed at t = " << out.nonfinite_at;
            throw QuadratureError(msg.str(), out.value, out.error_estimate);
        }
        return out.value;
    };

    double prev = tail_integral(std::ldexp(1.0, -4));
    report.tail.partials.push_back(prev);
    for (int k = 5; k <= 20; ++k) {
        const double cur = tail_integral(std::ldexp(1.0, -k));
        report.tail.partials.push_back(cur);
        report.tail.increments.push_back(cur - prev);
        prev = cur;
    }

    const auto& inc = report.tail.increments;
    int geometric = 0;
    for (std::size_t i = 1; i < inc.size(); ++i) {
        const double prev_inc = std::abs(inc[i - 1]);
        const double cur_inc = std::abs(inc[i]);
        if (prev_inc == 0.0 || cur_inc <= 0.85 * prev_inc) ++geometric;
    }
    if (geometric + 2 >= static_cast<int>(inc.size())) {
        report.status = Admissibility::Pass;
        report.tail.note = "dyadic tail increments decay geometrically";
    } else {
        report.status = Admissibility::Inconclusive;
        report.tail.note = "dyadic tail increments do not decay geometrically";
    }
    return report;
}

H2Report check_H2(const WeightSpec& weight,
                  const std::vector<std::pair<double, double>>& probe_intervals) {
    if (probe_intervals.empty()) {
        throw DomainError("check_H2 requires at least one probe interval");
    }
    constexpr double overflow_guard = 1e12;
    constexpr int samples = 2048;

    H2Report report{true, {}};
    for (const auto& [lo, hi] : probe_intervals) {
        if (!(lo > 0.0 && lo < hi && hi <= 1.0)) {
            throw DomainError("check_H2 probe intervals must be compact subsets of (0,1]");
        }
        double vmax = 0.0;
        for (int i = 0; i <= samples; ++i) {
            const double t = lo + (hi - lo) * i / samples;
            const double v = weight(t);
            if (!std::isfinite(v) || v > overflow_guard) {
                report.pass = false;
                vmax = std::isfinite(v) ? std::max(vmax, v)
                                        : std::numeric_limits<double>::infinity();
            } else {
                vmax = std::max(vmax, v);
            }
        }
        report.interval_max.push_back(vmax);
    }
    return report;
}

} // namespace fracbvp
