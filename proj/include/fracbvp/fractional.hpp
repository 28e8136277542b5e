#pragma once

#include <functional>

#include "fracbvp/errors.hpp"

namespace fracbvp {

/// Order of the fractional derivative in the boundary value problem.
/// Restricted to (1, 2]; other orders are rejected at construction.
class FractionalOrder {
public:
    explicit FractionalOrder(double alpha);

    double alpha() const { return alpha_; }
    /// True when the order is exactly 2, where the fractional formulas
    /// degenerate to classical calculus and are special-cased.
    bool is_classical() const { return alpha_ == 2.0; }

private:
    double alpha_;
};

/// Gamma function for positive arguments, Lanczos rational approximation
/// with reflection. Relative error below 1e-13 on the tested range.
double gamma_fn(double x);

/// Dirichlet Green's function for D^alpha on [0,1], two-branch closed form.
/// Total on the unit square and continuous across s = t.
double green_value(FractionalOrder order, double t, double s);

/// The three closed-form kernel bound expressions evaluated at (alpha,t,s):
///   lower   = (a-1)/Gamma(a) * t^(a-1) (1-t) (1-s)^(a-1) s
///   upper_a = 1/Gamma(a)     * t^(a-1) (1-t) (1-s)^(a-2)
///   upper_b = 1/Gamma(a)     * s (1-s)^(a-1) t^(a-2)
/// upper_a is singular at s=1 (a<2) and upper_b at t=0; those limits are
/// reported as +infinity with the matching unbounded flag set.
struct KernelBounds {
    double lower;
    double upper_a;
    double upper_b;
    bool upper_a_unbounded;
    bool upper_b_unbounded;
};

KernelBounds kernel_bounds(FractionalOrder order, double t, double s);

using RealFn = std::function<double(double)>;

/// Riemann-Liouville fractional integral (1/Gamma(mu)) int_0^t (t-s)^(mu-1) f(s) ds
/// for mu > 0, via endpoint-singular quadrature. `tol` is absolute.
double rl_integral(double order, const RealFn& f, double t, double tol = 1e-12);

struct DerivativeOptions {
    /// Tolerance driving the inner fractional-integral quadratures.
    double quad_tol = 1e-10;
    /// Divided-difference step; 0 selects cbrt(quad_tol).
    double step = 0.0;
};

/// Riemann-Liouville fractional derivative of order mu in (0,2] at t,
/// computed as a centered divided difference of the numerically evaluated
/// integral I^(n-mu) u with n = 1 for mu <= 1 and n = 2 otherwise. Integer
/// orders reduce to classical divided differences of u itself.
///
/// Accuracy tracks the smoothness of the evaluator near the stencil; pass a
/// smooth callable (or an operator image), not a kinked interpolant, when
/// tight tolerances matter.
double rl_derivative(double order, const RealFn& u, double t, DerivativeOptions options = {});

namespace detail {
/// Green's function branch with exact endpoint distances supplied by the
/// caller (quadrature nodes carry them); avoids cancellation near s=t and
/// s=1. inv_gamma_alpha = 1/Gamma(alpha).
double green_kernel(double alpha, double inv_gamma_alpha, double t, double s,
                    double one_minus_s, double t_minus_s);
} // namespace detail

} // namespace fracbvp
