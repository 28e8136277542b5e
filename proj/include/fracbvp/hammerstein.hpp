#pragma once

#include <memory>
#include <vector>

#include "fracbvp/problem.hpp"

namespace fracbvp {

/// Execution policy for the node-parallel kernels. Results are bit-identical
/// across policies and thread counts: every node value is produced by the
/// same serial quadrature, written to its own slot.
enum class Exec { serial, parallel };

namespace detail {
struct RowCache;
}

/// Precomputed context for the solution operator
///   (Su)(t) = int_0^1 G(t,s) h(s) f(u(s)) ds
/// on a fixed grid: kernel rows (tanh-sinh abscissae with G*h*weight
/// products) per target node, keyed by (alpha, grid) only. Read-only during
/// application; safe to share across concurrent applications.
class OperatorWorkspace {
public:
    OperatorWorkspace(ProblemSpec problem, int n, double quad_tol = 1e-12);
    ~OperatorWorkspace();

    OperatorWorkspace(const OperatorWorkspace&) = delete;
    OperatorWorkspace& operator=(const OperatorWorkspace&) = delete;

    const ProblemSpec& problem() const { return problem_; }
    const std::shared_ptr<const Grid>& grid() const { return grid_; }
    double quad_tol() const { return quad_tol_; }

    /// Exponent of G(t,.)h(.) at s=0 for t > 0: G ~ s and h ~ s^-beta.
    double forcing_exponent_at_0() const;

    detail::RowCache& rows() const { return *rows_; }

private:
    ProblemSpec problem_;
    std::shared_ptr<const Grid> grid_;
    double quad_tol_;
    std::unique_ptr<detail::RowCache> rows_;
};

/// Apply S to u on the workspace grid. Endpoints are exactly zero. Negative
/// interpolated values of u are clamped to 0 before f is applied.
SampledFunction apply_S(const OperatorWorkspace& ws, const SampledFunction& u,
                        Exec exec = Exec::parallel);

/// S(u) evaluated at an arbitrary point (uncached quadrature).
double apply_S_at(const OperatorWorkspace& ws, const SampledFunction& u, double t);

/// The derivative channel of the image:
///   D^(alpha-1)Su(t) = int_0^t ((1-tau)^(alpha-1) - 1) h f du
///                    + int_t^1 (1-tau)^(alpha-1) h f du.
/// The second integral enters with a plus sign; the constant-forcing oracle
/// D^(alpha-1)Su = 1/alpha - t pins it. Returned at every node; entry 0 is
/// the t->0 limit of the integrand sum when it exists and is only meaningful
/// through the t^(alpha-1) weight, which vanishes there.
std::vector<double> apply_D_S(const OperatorWorkspace& ws, const SampledFunction& u,
                              Exec exec = Exec::parallel);

/// Fixed-point defect ||u - Su||_inf over grid nodes.
double integral_residual(const OperatorWorkspace& ws, const SampledFunction& u,
                         Exec exec = Exec::parallel);

/// Smooth evaluator for S(u): per-cell Chebyshev-Lobatto samples of the
/// image on the workspace grid cells, evaluated by barycentric
/// interpolation. The image is analytic inside each cell, so a handful of
/// points per cell reproduces it to ~1e-12; this is the evaluator the
/// fractional-derivative stencils need.
class DenseOperatorImage {
public:
    DenseOperatorImage(const OperatorWorkspace& ws, const SampledFunction& u,
                       int points_per_cell = 9, Exec exec = Exec::parallel);

    double operator()(double x) const;

private:
    std::shared_ptr<const Grid> grid_;
    int m_;
    std::vector<double> samples_; // cell-major Lobatto samples
    std::vector<double> bary_;    // barycentric weights for one cell
};

/// sup over interior grid nodes in [delta, 1-delta] of
/// |D^alpha (Su)(t) + h(t) f(u(t))|, with D^alpha applied by the generic
/// divided-difference scheme to the dense operator image. Measures how well
/// the computed solution field satisfies the differential equation.
double differential_residual(const OperatorWorkspace& ws, const SampledFunction& u,
                             double delta, Exec exec = Exec::parallel);

} // namespace fracbvp
