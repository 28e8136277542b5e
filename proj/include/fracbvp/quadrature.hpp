#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fracbvp/errors.hpp"
#include "fracbvp/fractional.hpp"

namespace fracbvp {

class WeightSpec;

/// An integrand on [0,1] with declared algebraic endpoint behavior
/// (integrand ~ s^lambda0 near 0, ~ (1-s)^lambda1 near 1) and an optional
/// interior derivative kink. Exponents must exceed -1 or the integral
/// diverges; construction rejects them.
struct SingularIntegrand {
    SingularIntegrand(std::function<double(double)> evaluator,
                      double exponent_at_0 = 0.0, double exponent_at_1 = 0.0,
                      std::optional<double> kink = std::nullopt);

    std::function<double(double)> evaluator;
    double exponent_at_0;
    double exponent_at_1;
    std::optional<double> kink;
};

struct QuadratureResult {
    double value;
    double error_estimate;
    std::int64_t evaluations;
};

/// Tanh-sinh integration over [0,1], split at the declared kink. `tolerance`
/// is absolute; on success |value - exact| <= max(tolerance, error_estimate)
/// for integrands smooth away from the declared endpoints/kink. Throws
/// QuadratureError (carrying the best estimate) when the node budget runs out.
QuadratureResult integrate(const SingularIntegrand& integrand, double tolerance);

enum class Admissibility { Pass, Fail, Inconclusive };

/// Cauchy-tail data backing a numerical (H1) decision: partial integrals
/// F(2^-k) and their increments for k = 4..20.
struct H1TailReport {
    std::vector<double> partials;
    std::vector<double> increments;
    std::string note;
};

struct H1Report {
    Admissibility status;
    bool analytic; // decided from a declared exponent rather than sampling
    H1TailReport tail;
};

/// (H1): int_0^1 s^(alpha-1) h(s) ds < infinity. Weights with a declared
/// singularity exponent -beta at 0 are decided analytically (Pass iff
/// beta < alpha); otherwise a numerical Cauchy test on the dyadic tail,
/// which can only return Pass or Inconclusive.
H1Report check_H1(FractionalOrder order, const WeightSpec& weight);

struct H2Report {
    bool pass;
    // one entry per probe interval: the densely sampled maximum
    std::vector<double> interval_max;
};

/// (H2): h bounded on compact subintervals of (0,1]. Samples each probe
/// interval densely; fails on non-finite values or values beyond the
/// overflow guard (1e12).
H2Report check_H2(const WeightSpec& weight,
                  const std::vector<std::pair<double, double>>& probe_intervals);

} // namespace fracbvp
