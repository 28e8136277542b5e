#include "fracbvp/detail/tanh_sinh.hpp"

namespace fracbvp::detail {

namespace {

// sigma(pi sinh tau) and its complement, formed from exp directly so that
// distances down to ~1e-300 stay exact.
TsNode make_node(double tau) {
    const double y = 3.14159265358979323846 * std::sinh(tau);
    const double e = std::exp(-std::abs(y));
    const double near = e / (1.0 + e);  // distance to the approached endpoint
    const double far = 1.0 / (1.0 + e); // distance to the other endpoint
    TsNode n;
    n.sigma_lo = (y >= 0.0) ? far : near;
    n.sigma_hi = (y >= 0.0) ? near : far;
    n.weight = 3.14159265358979323846 * std::cosh(tau) * n.sigma_lo * n.sigma_hi;
    return n;
}

bool usable(const TsNode& n) {
    const double d = std::min(n.sigma_lo, n.sigma_hi);
    return d > 1e-305 && n.weight > 1e-305;
}

} // namespace

const TsTables& TsTables::instance() {
    static const TsTables tables;
    return tables;
}

TsTables::TsTables() {
    constexpr double tau_cap = 6.8;
    // level 0: integer tau outward from 0
    for (int k = 0;; ++k) {
        TsNode n = make_node(static_cast<double>(k));
        if (k > 0 && (!usable(n) || k > tau_cap)) break;
        levels_[0].push_back(n);
    }
    // level l: odd multiples of 2^-l outward
    for (int l = 1; l <= max_level; ++l) {
        const double h = std::ldexp(1.0, -l);
        for (int k = 0;; ++k) {
            const double tau = (2 * k + 1) * h;
            if (tau > tau_cap) break;
            TsNode n = make_node(tau);
            if (!usable(n)) break;
            levels_[l].push_back(n);
        }
    }
}

} // namespace fracbvp::detail
