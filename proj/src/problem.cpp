#include "fracbvp/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace fracbvp {

// ---------------------------------------------------------------------------
// WeightSpec

WeightSpec WeightSpec::power(double c, double beta) {
    if (!(c > 0.0)) throw SpecError("power weight requires a positive coefficient");
    if (!(beta >= 0.0)) throw SpecError("power weight requires beta >= 0");
    WeightSpec w;
    w.kind_ = Kind::power;
    w.c_ = c;
    w.beta_ = beta;
    return w;
}

WeightSpec WeightSpec::table(std::vector<std::pair<double, double>> samples,
                             std::optional<double> exponent_at_0) {
    if (samples.size() < 2) throw SpecError("table weight needs at least two samples");
    if (!std::is_sorted(samples.begin(), samples.end(),
                        [](const auto& a, const auto& b) { return a.first < b.first; })) {
        throw SpecError("table weight samples must be sorted by abscissa");
    }
    WeightSpec w;
    w.kind_ = Kind::table;
    w.samples_ = std::move(samples);
    w.declared_ = exponent_at_0;
    return w;
}

WeightSpec WeightSpec::expression(RealFn h, std::optional<double> exponent_at_0) {
    if (!h) throw SpecError("expression weight needs an evaluator");
    WeightSpec w;
    w.kind_ = Kind::expression;
    w.fn_ = std::move(h);
    w.declared_ = exponent_at_0;
    return w;
}

double WeightSpec::operator()(double t) const {
    switch (kind_) {
        case Kind::power:
            return beta_ == 0.0 ? c_ : c_ * std::pow(t, -beta_);
        case Kind::expression:
            return fn_(t);
        case Kind::table: {
            if (t <= samples_.front().first) return samples_.front().second;
            if (t >= samples_.back().first) return samples_.back().second;
            auto hi = std::upper_bound(samples_.begin(), samples_.end(), t,
                                       [](double v, const auto& s) { return v < s.first; });
            auto lo = hi - 1;
            const double lambda = (t - lo->first) / (hi->first - lo->first);
            return lo->second + lambda * (hi->second - lo->second);
        }
    }
    return 0.0;
}

std::optional<double> WeightSpec::declared_exponent_at_0() const {
    if (kind_ == Kind::power) return -beta_;
    return declared_;
}

// ---------------------------------------------------------------------------
// NonlinearitySpec

NonlinearitySpec NonlinearitySpec::power(double theta) {
    if (!(theta > 0.0)) throw SpecError("power nonlinearity requires theta > 0");
    NonlinearitySpec f;
    f.kind_ = Kind::power;
    f.theta_ = theta;
    f.declared_ = theta < 1.0   ? DeclaredClass::A2
                  : theta > 1.0 ? DeclaredClass::A1
                                : DeclaredClass::Unknown;
    if (theta > 1.0) f.p_ = theta + 1.0;
    return f;
}

NonlinearitySpec NonlinearitySpec::expression(RealFn f, DeclaredClass declared,
                                              std::optional<double> p) {
    if (!f) throw SpecError("expression nonlinearity needs an evaluator");
    NonlinearitySpec s;
    s.kind_ = Kind::expression;
    s.fn_ = std::move(f);
    s.declared_ = declared;
    s.p_ = p;
    return s;
}

double NonlinearitySpec::operator()(double u) const {
    if (kind_ == Kind::power) return std::pow(u, theta_);
    return fn_(u);
}

// ---------------------------------------------------------------------------
// ProblemSpec

ProblemSpec ProblemSpec::validated(FractionalOrder order, WeightSpec weight,
                                   NonlinearitySpec nonlinearity) {
    const double a = order.alpha();
    if (weight.kind() == WeightSpec::Kind::power && weight.beta() >= a) {
        std::ostringstream msg;
        msg << "(H1) fails: weight exponent beta = " << weight.beta()
            << " must be smaller than alpha = " << a;
        throw SpecError(msg.str());
    }

    H1Report h1 = check_H1(order, weight);
    if (h1.status != Admissibility::Pass) {
        std::ostringstream msg;
        msg << "(H1) " << (h1.status == Admissibility::Fail ? "fails" : "is inconclusive")
            << " for the supplied weight (alpha = " << a << "): " << h1.tail.note;
        throw SpecError(msg.str());
    }

    std::vector<std::pair<double, double>> probes;
    for (int k = 2; k <= 6; ++k) probes.emplace_back(1.0 / k, 1.0);
    H2Report h2 = check_H2(weight, probes);
    if (!h2.pass) {
        throw SpecError("(H2) fails: weight unbounded on a canonical probe interval");
    }

    // finiteness / sign spot checks of the assembled data
    for (int i = 0; i <= 64; ++i) {
        const double t = std::pow(10.0, -6.0 + 6.0 * i / 64.0); // (1e-6, 1]
        const double h = weight(t);
        if (!std::isfinite(h) || h < 0.0) {
            std::ostringstream msg;
            msg << "weight must be finite and non-negative on (0,1]; h(" << t << ") = " << h;
            throw SpecError(msg.str());
        }
    }
    for (int i = 0; i <= 64; ++i) {
        const double u = i == 0 ? 0.0 : std::pow(10.0, -6.0 + 12.0 * i / 64.0);
        const double v = nonlinearity(u);
        if (!std::isfinite(v) || v < 0.0) {
            std::ostringstream msg;
            msg << "nonlinearity must be finite and non-negative on [0,inf); f(" << u
                << ") = " << v;
            throw SpecError(msg.str());
        }
    }

    return ProblemSpec(order, std::move(weight), std::move(nonlinearity));
}

// ---------------------------------------------------------------------------
// Grid

double Grid::map(double x) {
    const double a = x * x;
    const double b = (1.0 - x) * (1.0 - x);
    return a / (a + b);
}

double Grid::inverse_map(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("inverse_map argument outside [0,1]");
    if (t > 0.5) return 1.0 - inverse_map(1.0 - t);
    const double delta = t - 0.5;
    if (delta > -1e-4) return 0.5 + 0.5 * delta + 0.5 * delta * delta * delta;
    // x^2 (1-2t) + 2tx - t = 0, stable branch for t < 1/2
    return (std::sqrt(t * (1.0 - t)) - t) / (1.0 - 2.0 * t);
}

Grid::Grid(int n) : n_(n) {
    if (n < 2) throw DomainError("grid needs at least two intervals");
    nodes_.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; 2 * i <= n; ++i) {
        const double t = map(static_cast<double>(i) / n);
        nodes_[static_cast<std::size_t>(i)] = t;
        nodes_[static_cast<std::size_t>(n - i)] = 1.0 - t;
    }
    nodes_.front() = 0.0;
    nodes_.back() = 1.0;
}

// ---------------------------------------------------------------------------
// SampledFunction

SampledFunction SampledFunction::from_fn(std::shared_ptr<const Grid> grid, const RealFn& f,
                                         bool dirichlet) {
    SampledFunction u;
    u.grid = std::move(grid);
    u.values.resize(static_cast<std::size_t>(u.grid->size()));
    for (int i = 0; i < u.grid->size(); ++i) {
        u.values[static_cast<std::size_t>(i)] = f(u.grid->node(i));
    }
    u.dirichlet = dirichlet;
    if (dirichlet) {
        u.values.front() = 0.0;
        u.values.back() = 0.0;
    }
    return u;
}

double SampledFunction::operator()(double t) const {
    const int n = grid->intervals();
    const double x = Grid::inverse_map(std::clamp(t, 0.0, 1.0));
    const double xn = x * n;

    if (interp == Interp::linear_in_x) {
        int j = std::clamp(static_cast<int>(xn), 0, n - 1);
        const double lam = xn - j;
        return (1.0 - lam) * values[static_cast<std::size_t>(j)] +
               lam * values[static_cast<std::size_t>(j + 1)];
    }

    // local 4-point Lagrange cubic on the uniform x grid
    int j = std::clamp(static_cast<int>(xn), 0, n - 1);
    int lo = std::clamp(j - 1, 0, n - 3);
    const double xi = xn - lo;
    const double l0 = -(xi - 1.0) * (xi - 2.0) * (xi - 3.0) / 6.0;
    const double l1 = xi * (xi - 2.0) * (xi - 3.0) / 2.0;
    const double l2 = -xi * (xi - 1.0) * (xi - 3.0) / 2.0;
    const double l3 = xi * (xi - 1.0) * (xi - 2.0) / 6.0;
    return l0 * values[static_cast<std::size_t>(lo)] +
           l1 * values[static_cast<std::size_t>(lo + 1)] +
           l2 * values[static_cast<std::size_t>(lo + 2)] +
           l3 * values[static_cast<std::size_t>(lo + 3)];
}

double SampledFunction::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

double SampledFunction::sup_norm_refined() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (std::abs(values[i]) > std::abs(values[best])) best = i;
    }
    const double node_max = std::abs(values[best]);
    if (best == 0 || best + 1 == values.size()) return node_max;
    // parabolic vertex through the argmax node and its neighbours in x
    const double vm = std::abs(values[best - 1]);
    const double v0 = node_max;
    const double vp = std::abs(values[best + 1]);
    const double curv = 2.0 * v0 - vm - vp;
    if (curv <= 0.0) return node_max;
    const double num = vp - vm;
    return v0 + num * num / (8.0 * curv);
}

// ---------------------------------------------------------------------------
// norms and cone

double e_alpha_norm(const SampledFunction& u, FractionalOrder order) {
    if (!u.d_alpha_minus_1) {
        throw ContractError("e_alpha_norm requires the D^(alpha-1) channel");
    }
    const std::vector<double>& ch = *u.d_alpha_minus_1;
    if (ch.size() != u.values.size()) {
        throw ContractError("derivative channel size does not match the grid");
    }
    const double a = order.alpha();
    double sup = 0.0;
    for (double v : u.values) sup = std::max(sup, std::abs(v));
    double weighted = 0.0;
    for (std::size_t i = 1; i < ch.size(); ++i) {
        const double t = u.grid->node(static_cast<int>(i));
        weighted = std::max(weighted, std::pow(t, a - 1.0) * std::abs(ch[i]));
    }
    return sup + weighted;
}

ConeReport cone_membership(const SampledFunction& u, FractionalOrder order) {
    const double a = order.alpha();
    double umax = 0.0;
    double vmin = 0.0;
    for (double v : u.values) {
        umax = std::max(umax, v);
        vmin = std::min(vmin, v);
    }
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double t = u.grid->node(static_cast<int>(i));
        const double floor = (a - 1.0) * t * (1.0 - t) * umax;
        margin = std::min(margin, u.values[i] - floor);
    }
    return ConeReport{vmin >= -1e-12 && margin >= -1e-12, margin};
}

double rl_derivative(double order, const SampledFunction& u, double t,
                     DerivativeOptions options) {
    const double h = options.step > 0.0 ? options.step : std::cbrt(options.quad_tol);
    const Grid& g = *u.grid;
    double widest = 0.0;
    for (int i = 0; i < g.intervals(); ++i) {
        const double lo = g.node(i);
        const double hi = g.node(i + 1);
        if (hi < t - h || lo > t + h) continue;
        widest = std::max(widest, hi - lo);
    }
    if (widest > h) {
        std::ostringstream msg;
        msg << "sampled function too coarse near t = " << t << ": cell width " << widest
            << " exceeds the stencil step " << h;
        throw ResolutionError(msg.str());
    }
    return rl_derivative(order, RealFn([&u](double s) { return u(s); }), t, options);
}

// ---------------------------------------------------------------------------
// parsing

namespace {

using nlohmann::json;

[[noreturn]] void spec_fail(const std::string& where, const std::string& what) {
    throw SpecError(where + ": " + what);
}

double require_number(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) spec_fail(where, std::string("missing field '") + key + "'");
    if (!j[key].is_number()) spec_fail(where, std::string("field '") + key + "' must be a number");
    return j[key].get<double>();
}

void reject_unknown(const json& j, const std::string& where,
                    std::initializer_list<const char*> known) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) spec_fail(where, "unknown field '" + it.key() + "'");
    }
}

} // namespace

ProblemDocument parse_problem_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::ostringstream msg;
        msg << "parse error at byte " << e.byte << ": " << e.what();
        throw SpecError(msg.str());
    }
    if (!j.is_object()) throw SpecError("problem document must be a JSON object");
    reject_unknown(j, "document", {"alpha", "weight", "nonlinearity", "solver"});

    const double alpha = require_number(j, "document", "alpha");
    FractionalOrder order = [&] {
        try {
            return FractionalOrder(alpha);
        } catch (const DomainError& e) {
            throw SpecError(std::string("alpha: ") + e.what());
        }
    }();

    if (!j.contains("weight") || !j["weight"].is_object()) {
        throw SpecError("document: missing 'weight' object");
    }
    const json& jw = j["weight"];
    reject_unknown(jw, "weight", {"kind", "c", "beta"});
    if (jw.value("kind", "") != "power") {
        spec_fail("weight", "file format supports kind 'power' only");
    }
    WeightSpec weight = WeightSpec::power(require_number(jw, "weight", "c"),
                                          require_number(jw, "weight", "beta"));

    if (!j.contains("nonlinearity") || !j["nonlinearity"].is_object()) {
        throw SpecError("document: missing 'nonlinearity' object");
    }
    const json& jf = j["nonlinearity"];
    reject_unknown(jf, "nonlinearity", {"kind", "theta", "class", "p"});
    if (jf.value("kind", "") != "power") {
        spec_fail("nonlinearity", "file format supports kind 'power' only");
    }
    const double theta = require_number(jf, "nonlinearity", "theta");
    NonlinearitySpec f = NonlinearitySpec::power(theta);
    if (jf.contains("class")) {
        const std::string cls = jf["class"].get<std::string>();
        const char* analytic = theta < 1.0 ? "A2" : theta > 1.0 ? "A1" : "Neither";
        if (cls != analytic) {
            spec_fail("nonlinearity", "declared class '" + cls +
                                          "' contradicts the power exponent (expected '" +
                                          analytic + "')");
        }
    }

    SolverOptions solver;
    if (j.contains("solver")) {
        const json& js = j["solver"];
        reject_unknown(js, "solver", {"n", "tol", "damping", "max_iter"});
        if (js.contains("n")) solver.n = js["n"].get<int>();
        if (js.contains("tol")) solver.tol = js["tol"].get<double>();
        if (js.contains("damping")) solver.damping = js["damping"].get<double>();
        if (js.contains("max_iter")) solver.max_iter = js["max_iter"].get<int>();
        if (!(solver.tol > 0.0)) spec_fail("solver", "tol must be positive");
        if (!(solver.damping > 0.0 && solver.damping <= 1.0)) {
            spec_fail("solver", "damping must lie in (0, 1]");
        }
        if (solver.n < 32) spec_fail("solver", "n must be at least 32");
        if (solver.max_iter < 1) spec_fail("solver", "max_iter must be positive");
    }

    return ProblemDocument{ProblemSpec::validated(order, std::move(weight), std::move(f)),
                           solver};
}

ProblemSpec parse_problem(const std::string& text) {
    return parse_problem_document(text).problem;
}

std::string serialize_problem(const ProblemDocument& doc) {
    const ProblemSpec& p = doc.problem;
    if (p.weight().kind() != WeightSpec::Kind::power ||
        p.nonlinearity().kind() != NonlinearitySpec::Kind::power) {
        throw ContractError("only power weights/nonlinearities have a file representation");
    }
    json j;
    j["alpha"] = p.order().alpha();
    j["weight"] = {{"kind", "power"}, {"c", p.weight().coefficient()}, {"beta", p.weight().beta()}};
    j["nonlinearity"] = {{"kind", "power"}, {"theta", p.nonlinearity().theta()}};
    j["solver"] = {{"n", doc.solver.n},
                   {"tol", doc.solver.tol},
                   {"damping", doc.solver.damping},
                   {"max_iter", doc.solver.max_iter}};
    return j.dump(2);
}

} // namespace fracbvp
