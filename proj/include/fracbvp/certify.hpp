#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracbvp/hammerstein.hpp"
#include "fracbvp/problem.hpp"

namespace fracbvp {

enum class GrowthClass { A1, A2, Neither };

struct ClassificationReport {
    GrowthClass cls;
    std::optional<double> p; // the superlinear comparison exponent, A1 only
    double f0_estimate;      // lim f(u)/u at 0 (numeric estimate)
    double finf_estimate;    // lim f(u)/u at infinity (numeric estimate)
};

/// Growth classification. Power nonlinearities are decided analytically
/// (theta < 1 -> A2, theta > 1 -> A1 with p = theta + 1, theta = 1 ->
/// Neither); expressions are scanned logarithmically over u in [1e-6, 1e6]
/// and classified from monotone trends of f(u)/u, Neither when inconclusive.
ClassificationReport classify_nonlinearity(const NonlinearitySpec& f);

/// The Krasnoselskii annulus constants constructed from the cone
/// expansion/compression argument, with the two supporting integrals
///   integral_small = (1/Gamma(a)) int_0^1 (s(1-s))^(a-1) h(s) ds
///   integral_mid   = int_{1/4}^{3/4} G(1/2,s) h(s) ds.
/// Superlinear: rate_small = eps, rate_large = rho, threshold = M*.
/// Sublinear:   rate_small = L,   rate_large = zeta, threshold = L2.
struct Certificate {
    enum class Case { Superlinear, Sublinear };

    Case growth_case;
    double small_radius; // r (or r1)
    double large_radius; // R (or R2)
    double rate_small;
    double rate_large;
    double threshold;
    double integral_small;
    double integral_mid;
    bool valid;
};

/// Superlinear construction (f0 = 0, finf = infinity):
///   eps = min(0.49, 1/integral_small), r the largest radius with
///   sup_{0<u<=r} f(u)/u <= eps, rho = 16/((a-1) integral_mid) with a small
///   upward margin, M* the smallest threshold with inf_{u>M*} f(u)/u >= rho,
///   R = 1.01 max(16 M*/(a-1), r).
/// Throws ContractError unless the nonlinearity classifies as A1, and
/// CertificateError when a threshold is not found below the scan cap.
Certificate certify_case1(const ProblemSpec& problem);

/// Sublinear construction (f0 = infinity, finf = 0):
///   L = 16/((a-1) integral_mid) (upward margin), r1 the largest radius with
///   inf_{0<u<=r1} f(u)/u >= L, zeta = 0.99/integral_small, L2 the smallest
///   threshold with sup_{u>L2} f(u)/u <= zeta,
///   R2 = 1.01 max(L2, max_{0<=u<=L2} f(u) integral_small/(1 - zeta integral_small)).
Certificate certify_case2(const ProblemSpec& problem);

struct BoundaryCheck {
    double peak;      // hat peak location of the test function
    double radius;    // cone-boundary radius tested
    bool inner;       // true for the small radius
    double lhs, rhs;  // the two sides of the tested inequality
    bool violated;    // beyond 1e-9 slack
};

struct VerificationReport {
    std::vector<BoundaryCheck> checks;
    int violations;
    double worst_margin; // min over checks of (slack direction) rhs-lhs
};

/// Samples the cone-boundary inequalities behind the certificate: test
/// functions psi_c = max{(a-1)t(1-t), hat_c} with unit sup norm and peaks c
/// equispaced in (0,1). Superlinear: ||S(r psi)|| <= r and S(R psi)(1/2) >= R;
/// sublinear: S(r1 psi)(1/2) >= r1 and ||S(R2 psi)|| <= R2.
VerificationReport verify_certificate_by_sampling(const ProblemSpec& problem,
                                                  const Certificate& certificate,
                                                  int family_size,
                                                  Exec exec = Exec::parallel,
                                                  int grid_n = 512);

std::string serialize_certificate(const Certificate& c);
Certificate parse_certificate(const std::string& text);

} // namespace fracbvp
