#pragma once

#include <optional>
#include <vector>

#include "fracbvp/certify.hpp"
#include "fracbvp/hammerstein.hpp"
#include "fracbvp/problem.hpp"

namespace fracbvp {

enum class AnnulusPosition { inside, below_r, above_R };

struct SolveReport {
    SampledFunction solution;
    int iterations = 0;
    std::vector<double> history; // per-iteration ||u_{k+1} - u_k||_inf
    double integral_residual = 0.0;
    double differential_residual = 0.0; // on [0.05, 0.95]
    double cone_margin = 0.0;           // reported even when negative
    double sup_norm = 0.0;
    std::optional<AnnulusPosition> annulus_position;
    bool collapsed_to_zero = false;
};

/// Raised when the damped Picard iteration exhausts max_iter or collapses to
/// the trivial fixed point twice; carries everything computed so far.
class NonconvergenceError : public Error {
public:
    NonconvergenceError(const std::string& what, SolveReport report)
        : Error(what), report(std::move(report)) {}

    SolveReport report;
};

/// Damped Picard iteration u_{k+1} = (1-lambda) u_k + lambda S(u_k), clamped
/// non-negative, stopping on ||u_{k+1} - u_k||_inf <= tol. The fixed-point
/// defect is re-verified independently after convergence. When a certificate
/// is supplied the initial cone profile is scaled to sqrt(r R) and the
/// report's annulus_position is filled from the solution's sup norm.
///
/// Zero-solution guard: if the iterate's sup norm falls below 1e-12 while
/// f(0) = 0, restarts once from the cone profile (scaled to the
/// certificate's small radius when available); a second collapse reports the
/// trivial fixed point via NonconvergenceError.
SolveReport picard_solve(const ProblemSpec& problem, const SolverOptions& options,
                         const Certificate* certificate = nullptr,
                         Exec exec = Exec::parallel);

} // namespace fracbvp
