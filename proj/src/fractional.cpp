#include "fracbvp/fractional.hpp"

#include <cmath>
#include <sstream>

#include "fracbvp/detail/tanh_sinh.hpp"

namespace fracbvp {

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 1.0 && alpha <= 2.0)) {
        std::ostringstream msg;
        msg << "fractional order must lie in (1, 2], got " << alpha;
        throw DomainError(msg.str());
    }
}

namespace {

constexpr double kPi = 3.14159265358979323846;

// Lanczos g = 7, 9-term coefficients.
constexpr double kLanczos[9] = {
    0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7,
};

double lanczos_gamma(double z) {
    // valid for z >= 0.5
    z -= 1.0;
    double a = kLanczos[0];
    for (int i = 1; i < 9; ++i) a += kLanczos[i] / (z + i);
    const double t = z + 7.5;
    return std::sqrt(2.0 * kPi) * a * std::exp((z + 0.5) * std::log(t) - t);
}

} // namespace

double gamma_fn(double x) {
    if (!(x > 0.0)) {
        std::ostringstream msg;
        msg << "gamma_fn requires a positive argument, got " << x;
        throw DomainError(msg.str());
    }
    if (x < 0.5) return kPi / (std::sin(kPi * x) * lanczos_gamma(1.0 - x));
    return lanczos_gamma(x);
}

namespace detail {

double green_kernel(double alpha, double inv_gamma_alpha, double t, double s,
                    double one_minus_s, double t_minus_s) {
    const double e = alpha - 1.0;
    if (t_minus_s >= 0.0) { // s <= t branch
        double v = std::pow(t * one_minus_s, e) - std::pow(t_minus_s, e);
        if (v < 0.0) v = 0.0;
        return inv_gamma_alpha * v;
    }
    return inv_gamma_alpha * std::pow(t * one_minus_s, e);
}

} // namespace detail

double green_value(FractionalOrder order, double t, double s) {
    if (!(t >= 0.0 && t <= 1.0 && s >= 0.0 && s <= 1.0)) {
        throw DomainError("green_value arguments must lie in [0,1]");
    }
    const double a = order.alpha();
    return detail::green_kernel(a, 1.0 / gamma_fn(a), t, s, 1.0 - s, t - s);
}

KernelBounds kernel_bounds(FractionalOrder order, double t, double s) {
    if (!(t >= 0.0 && t <= 1.0 && s >= 0.0 && s <= 1.0)) {
        throw DomainError("kernel_bounds arguments must lie in [0,1]");
    }
    const double a = order.alpha();
    const double ig = 1.0 / gamma_fn(a);
    KernelBounds b{};
    b.lower = (a - 1.0) * ig * std::pow(t, a - 1.0) * (1.0 - t) * std::pow(1.0 - s, a - 1.0) * s;
    b.upper_a = ig * std::pow(t, a - 1.0) * (1.0 - t) * std::pow(1.0 - s, a - 2.0);
    b.upper_b = ig * s * std::pow(1.0 - s, a - 1.0) * std::pow(t, a - 2.0);
    b.upper_a_unbounded = std::isinf(b.upper_a);
    b.upper_b_unbounded = std::isinf(b.upper_b);
    return b;
}

double rl_integral(double order, const RealFn& f, double t, double tol) {
    if (!(order > 0.0)) throw DomainError("rl_integral requires a positive order");
    if (!(t >= 0.0)) throw DomainError("rl_integral requires t >= 0");
    if (t == 0.0) return 0.0;

    const double e = order - 1.0;
    auto integrand = [&](double x, double /*da*/, double db) {
        return std::pow(db, e) * f(x);
    };
    detail::TsOutcome out =
        detail::tanh_sinh(0.0, t, integrand, tol, 0.0, std::min(e, 0.0));
    if (out.nonfinite) {
        std::ostringstream msg;
        msg << "rl_integral: non-finite integrand sample at s = " << out.nonfinite_at;
        throw QuadratureError(msg.str(), out.value, out.error_estimate);
    }
    if (!out.converged) {
        throw QuadratureError("rl_integral: quadrature did not converge within the node budget",
                              out.value / gamma_fn(order), out.error_estimate);
    }
    return out.value / gamma_fn(order);
}

double rl_derivative(double order, const RealFn& u, double t, DerivativeOptions options) {
    if (!(order > 0.0 && order <= 2.0)) {
        throw DomainError("rl_derivative supports orders in (0, 2]");
    }
    const double h = options.step > 0.0 ? options.step : std::cbrt(options.quad_tol);
    if (t - h < 0.0 || t + h > 1.0) {
        std::ostringstream msg;
        msg << "rl_derivative stencil [t-h, t+h] must stay inside [0,1]; t = " << t
            << ", h = " << h;
        throw DomainError(msg.str());
    }

    if (order == 2.0) return (u(t - h) - 2.0 * u(t) + u(t + h)) / (h * h);
    if (order == 1.0) return (u(t + h) - u(t - h)) / (2.0 * h);

    const double inner_tol = std::max(options.quad_tol * 1e-3, 5e-14);
    const int n = order < 1.0 ? 1 : 2;
    const double iorder = n - order; // in (0,1)
    auto v = [&](double tau) { return rl_integral(iorder, u, tau, inner_tol); };
    if (n == 1) return (v(t + h) - v(t - h)) / (2.0 * h);
    return (v(t - h) - 2.0 * v(t) + v(t + h)) / (h * h);
}

} // namespace fracbvp
