#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fracbvp/fractional.hpp"
#include "fracbvp/quadrature.hpp"

namespace fracbvp {

/// Weight h of the problem. Power weights h(t) = c t^-beta are the
/// first-class citizens (they are what the file format supports); tables and
/// expressions exist for embedding and tests and carry a declared
/// singularity exponent at 0 when they have one.
class WeightSpec {
public:
    enum class Kind { power, table, expression };

    static WeightSpec power(double c, double beta);
    static WeightSpec table(std::vector<std::pair<double, double>> samples,
                            std::optional<double> exponent_at_0 = std::nullopt);
    static WeightSpec expression(RealFn h,
                                 std::optional<double> exponent_at_0 = std::nullopt);

    double operator()(double t) const;

    Kind kind() const { return kind_; }
    double coefficient() const { return c_; }
    double beta() const { return beta_; }
    /// lambda such that h ~ t^lambda as t -> 0, when declared.
    std::optional<double> declared_exponent_at_0() const;

private:
    WeightSpec() = default;
    Kind kind_ = Kind::power;
    double c_ = 1.0;
    double beta_ = 0.0;
    std::optional<double> declared_;
    RealFn fn_;
    std::vector<std::pair<double, double>> samples_;
};

/// Nonlinearity f. Power means f(u) = u^theta; expressions must declare
/// their growth class, which is spot-checked numerically at assembly.
class NonlinearitySpec {
public:
    enum class Kind { power, expression };
    enum class DeclaredClass { A1, A2, Unknown };

    static NonlinearitySpec power(double theta);
    static NonlinearitySpec expression(RealFn f, DeclaredClass declared,
                                       std::optional<double> p = std::nullopt);

    double operator()(double u) const;

    Kind kind() const { return kind_; }
    double theta() const { return theta_; }
    DeclaredClass declared_class() const { return declared_; }
    std::optional<double> growth_p() const { return p_; }

private:
    NonlinearitySpec() = default;
    Kind kind_ = Kind::power;
    double theta_ = 1.0;
    DeclaredClass declared_ = DeclaredClass::Unknown;
    std::optional<double> p_;
    RealFn fn_;
};

/// A validated instance of the boundary value problem
///   D^alpha u + h(t) f(u) = 0,  u(0) = u(1) = 0.
/// `validated` runs the admissibility checks ((H1), (H2) on the canonical
/// probe set, finiteness/sign spot checks) and throws SpecError on failure.
class ProblemSpec {
public:
    static ProblemSpec validated(FractionalOrder order, WeightSpec weight,
                                 NonlinearitySpec nonlinearity);

    const FractionalOrder& order() const { return order_; }
    const WeightSpec& weight() const { return weight_; }
    const NonlinearitySpec& nonlinearity() const { return nonlinearity_; }

private:
    ProblemSpec(FractionalOrder order, WeightSpec weight, NonlinearitySpec f)
        : order_(order), weight_(std::move(weight)), nonlinearity_(std::move(f)) {}

    FractionalOrder order_;
    WeightSpec weight_;
    NonlinearitySpec nonlinearity_;
};

/// Symmetric graded grid on [0,1]: uniform x_i = i/n pushed through
/// w(x) = x^2 / (x^2 + (1-x)^2), which clusters nodes quadratically at both
/// endpoints. Nodes are reflected so the set is exactly invariant under
/// t -> 1-t.
class Grid {
public:
    explicit Grid(int n);

    int intervals() const { return n_; }
    int size() const { return n_ + 1; }
    double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    const std::vector<double>& nodes() const { return nodes_; }

    static double map(double x);
    static double inverse_map(double t);

private:
    int n_;
    std::vector<double> nodes_;
};

/// Function values on a graded grid. Evaluation between nodes interpolates
/// in the graded coordinate x = w^-1(t) with a local 4-point cubic
/// (linear_in_x is kept as the cheap reference rule). Optionally carries the
/// D^(alpha-1) channel at the nodes; entry 0 of that channel is ignored by
/// norms since the weight t^(alpha-1) vanishes there and D^(alpha-1)u may
/// blow up at 0 for singular weights.
struct SampledFunction {
    enum class Interp { linear_in_x, cubic_in_x };

    std::shared_ptr<const Grid> grid;
    std::vector<double> values;
    std::optional<std::vector<double>> d_alpha_minus_1;
    bool dirichlet = false;
    Interp interp = Interp::cubic_in_x;

    static SampledFunction from_fn(std::shared_ptr<const Grid> grid, const RealFn& f,
                                   bool dirichlet = false);

    double operator()(double t) const;
    double max_abs() const;
    /// Largest node value refined by a parabolic fit through the argmax
    /// node's neighbours in the graded coordinate.
    double sup_norm_refined() const;
};

/// ||u||_{E_alpha} = max |u| + max_i t_i^(alpha-1) |D^(alpha-1)u(t_i)| over
/// the grid. Throws ContractError when the derivative channel is absent.
double e_alpha_norm(const SampledFunction& u, FractionalOrder order);

struct ConeReport {
    bool member;
    double worst_margin; // min over nodes of u - (alpha-1) t (1-t) max(u)
};

/// Membership in the cone u >= 0, u(t) >= (alpha-1) t (1-t) ||u||_inf,
/// checked node-wise with 1e-12 slack.
ConeReport cone_membership(const SampledFunction& u, FractionalOrder order);

/// rl_derivative for sampled data: validates that the local grid spacing
/// resolves the divided-difference stencil before delegating to the
/// evaluator-based routine.
double rl_derivative(double order, const SampledFunction& u, double t,
                     DerivativeOptions options = {});

struct SolverOptions {
    int n = 512;
    double tol = 1e-8;
    double damping = 0.5;
    int max_iter = 500;

    enum class Initial { cone_profile, constant, supplied };
    Initial initial = Initial::cone_profile;
    double initial_constant = 1.0;
    std::optional<SampledFunction> initial_function;
};

/// A parsed problem document: the validated problem plus any solver options
/// the file carried.
struct ProblemDocument {
    ProblemSpec problem;
    SolverOptions solver;
};

/// Parse the JSON problem format:
///   { "alpha": 1.5,
///     "weight": {"kind": "power", "c": 1.0, "beta": 1.2},
///     "nonlinearity": {"kind": "power", "theta": 0.3},
///     "solver": {"n": 512, "tol": 1e-8, "damping": 0.5, "max_iter": 500} }
/// All solver fields are optional. Throws SpecError with a location on
/// malformed input and on admissibility failures.
ProblemDocument parse_problem_document(const std::string& text);
ProblemSpec parse_problem(const std::string& text);

std::string serialize_problem(const ProblemDocument& doc);

} // namespace fracbvp
