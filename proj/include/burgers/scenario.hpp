#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "burgers/errors.hpp"
#include "burgers/exact.hpp"
#include "burgers/field_io.hpp"
#include "burgers/grid.hpp"
#include "burgers/heat_ivp.hpp"
#include "burgers/reference_fd.hpp"
#include "burgers/rng.hpp"

namespace burgers {

using nlohmann::json;

enum class ScenarioKind { ExactRecurrence, IvpPipeline, CrossValidate, OracleCompare };

inline std::string to_string(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::ExactRecurrence: return "exact-recurrence";
        case ScenarioKind::IvpPipeline: return "ivp-pipeline";
        case ScenarioKind::CrossValidate: return "cross-validate";
        case ScenarioKind::OracleCompare: return "oracle-compare";
    }
    throw ConfigInvalid("unreachable scenario kind");
}

inline ScenarioKind scenario_kind_from_string(const std::string& s) {
    if (s == "exact-recurrence") return ScenarioKind::ExactRecurrence;
    if (s == "ivp-pipeline") return ScenarioKind::IvpPipeline;
    if (s == "cross-validate") return ScenarioKind::CrossValidate;
    if (s == "oracle-compare") return ScenarioKind::OracleCompare;
    throw ConfigInvalid("unknown scenario kind: " + s);
}

/// Closed-form initial-data description. Kinds are named rather than
/// user-scriptable so the compatibility check always sees analytically
/// differentiable inputs.
struct InitialDataSpec {
    std::string kind = "tanh-pair";  // constants | tanh-pair | gaussian-bump
    double a = 1.0;                  // constants: s value; others: amplitude
    double b = 0.0;                  // constants: k value
    double k = 1.0;                  // tanh-pair wavenumbers
    double l = 1.0;
    double sigma = 2.0;  // gaussian-bump width
};

struct ToleranceSet {
    double seed_residual = 1e-10;
    double lift_residual = 1e-10;
    double recurrence_residual = 1e-8;
    double compatibility = 1e-8;
    double consistency = 1e-10;
    double oracle_agreement = 1e-6;
    double semigroup = 1e-12;
    double fixed_point = 1e-13;
    double translation = 1e-8;
    double conservation = 1e-8;
    double exact_agreement = 1e-6;
    double ratio_constancy = 1e-8;
    double path_independence = 1e-8;
    double cross_validation = 5e-3;
    double convergence_order = 1.9;

    void validate() const {
        for (double t : {seed_residual, lift_residual, recurrence_residual, compatibility,
                         consistency, oracle_agreement, semigroup, fixed_point, translation,
                         conservation, exact_agreement, ratio_constancy, path_independence,
                         cross_validation, convergence_order})
            if (!(t > 0.0)) throw ConfigInvalid("tolerances must be positive");
    }
};

struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::ExactRecurrence;
    DomainBox box;
    ConstantPair background;
    // two terms by default: single-term iterates collapse to constants
    std::vector<PlaneWaveTerm> seed_terms = {{1.0, 1.0, 1.0}, {0.5, -0.5, 1.5}};
    InitialDataSpec initial_data;
    int depth = 1;
    int sample_count = 100;
    std::uint64_t rng_seed = 42;
    double t_final = 0.1;
    std::vector<double> oracle_times = {0.01, 0.1, 1.0};
    std::vector<int> convergence_grids;  // optional cross-validate refinement study
    std::string out_dir = "out";
    std::string format = "csv";  // csv | bin
    ToleranceSet tolerances;

    void validate() const {
        box.validate();
        if (depth < 0 || depth > 12) throw ConfigInvalid("depth must be in [0, 12]");
        if (sample_count <= 0) throw ConfigInvalid("sample count must be positive");
        if (format != "csv" && format != "bin") throw ConfigInvalid("format must be csv or bin");
        if (t_final < box.t0) throw ConfigInvalid("t_final must not precede t0");
        const std::string& dk = initial_data.kind;
        if (dk != "constants" && dk != "tanh-pair" && dk != "gaussian-bump")
            throw ConfigInvalid("unknown initial data kind: " + dk);
        for (double t : oracle_times)
            if (!(t > 0.0)) throw ConfigInvalid("oracle times must be positive");
        for (int n : convergence_grids)
            if (n < 8 || (n & (n - 1)) != 0)
                throw ConfigInvalid("convergence grids must be powers of two, at least 8");
        tolerances.validate();
    }
};

inline json to_json(const ToleranceSet& t) {
    return json{{"seed_residual", t.seed_residual},
                {"lift_residual", t.lift_residual},
                {"recurrence_residual", t.recurrence_residual},
                {"compatibility", t.compatibility},
                {"consistency", t.consistency},
                {"oracle_agreement", t.oracle_agreement},
                {"semigroup", t.semigroup},
                {"fixed_point", t.fixed_point},
                {"translation", t.translation},
                {"conservation", t.conservation},
                {"exact_agreement", t.exact_agreement},
                {"ratio_constancy", t.ratio_constancy},
                {"path_independence", t.path_independence},
                {"cross_validation", t.cross_validation},
                {"convergence_order", t.convergence_order}};
}

inline void from_json_into(const json& j, ToleranceSet& t) {
    t.seed_residual = j.value("seed_residual", t.seed_residual);
    t.lift_residual = j.value("lift_residual", t.lift_residual);
    t.recurrence_residual = j.value("recurrence_residual", t.recurrence_residual);
    t.compatibility = j.value("compatibility", t.compatibility);
    t.consistency = j.value("consistency", t.consistency);
    t.oracle_agreement = j.value("oracle_agreement", t.oracle_agreement);
    t.semigroup = j.value("semigroup", t.semigroup);
    t.fixed_point = j.value("fixed_point", t.fixed_point);
    t.translation = j.value("translation", t.translation);
    t.conservation = j.value("conservation", t.conservation);
    t.exact_agreement = j.value("exact_agreement", t.exact_agreement);
    t.ratio_constancy = j.value("ratio_constancy", t.ratio_constancy);
    t.path_independence = j.value("path_independence", t.path_independence);
    t.cross_validation = j.value("cross_validation", t.cross_validation);
    t.convergence_order = j.value("convergence_order", t.convergence_order);
}

inline json to_json(const ScenarioConfig& c) {
    json seeds = json::array();
    for (const auto& s : c.seed_terms) seeds.push_back({{"a", s.a}, {"k", s.k}, {"l", s.l}});
    return json{{"scenario", to_string(c.kind)},
                {"box",
                 {{"Lx", c.box.Lx},
                  {"Ly", c.box.Ly},
                  {"nx", c.box.nx},
                  {"ny", c.box.ny},
                  {"t0", c.box.t0}}},
                {"background", {{"u0", c.background.u0}, {"v0", c.background.v0}}},
                {"seed_terms", seeds},
                {"initial_data",
                 {{"kind", c.initial_data.kind},
                  {"a", c.initial_data.a},
                  {"b", c.initial_data.b},
                  {"k", c.initial_data.k},
                  {"l", c.initial_data.l},
                  {"sigma", c.initial_data.sigma}}},
                {"depth", c.depth},
                {"sample_count", c.sample_count},
                {"rng_seed", c.rng_seed},
                {"t_final", c.t_final},
                {"oracle_times", c.oracle_times},
                {"convergence_grids", c.convergence_grids},
                {"output", {{"dir", c.out_dir}, {"format", c.format}}},
                {"tolerances", to_json(c.tolerances)}};
}

inline ScenarioConfig scenario_config_from_json(const json& j) {
    ScenarioConfig c;
    try {
        if (j.contains("scenario")) c.kind = scenario_kind_from_string(j.at("scenario"));
        if (j.contains("box")) {
            const json& b = j.at("box");
            c.box.Lx = b.value("Lx", c.box.Lx);
            c.box.Ly = b.value("Ly", c.box.Ly);
            c.box.nx = b.value("nx", c.box.nx);
            c.box.ny = b.value("ny", c.box.ny);
            c.box.t0 = b.value("t0", c.box.t0);
        }
        if (j.contains("background")) {
            c.background.u0 = j.at("background").value("u0", 0.0);
            c.background.v0 = j.at("background").value("v0", 0.0);
        }
        if (j.contains("seed_terms")) {
            c.seed_terms.clear();
            for (const auto& s : j.at("seed_terms"))
                c.seed_terms.push_back({s.at("a"), s.at("k"), s.at("l")});
        }
        if (j.contains("initial_data")) {
            const json& d = j.at("initial_data");
            c.initial_data.kind = d.value("kind", c.initial_data.kind);
            c.initial_data.a = d.value("a", c.initial_data.a);
            c.initial_data.b = d.value("b", c.initial_data.b);
            c.initial_data.k = d.value("k", c.initial_data.k);
            c.initial_data.l = d.value("l", c.initial_data.l);
            c.initial_data.sigma = d.value("sigma", c.initial_data.sigma);
        }
        c.depth = j.value("depth", c.depth);
        c.sample_count = j.value("sample_count", c.sample_count);
        c.rng_seed = j.value("rng_seed", c.rng_seed);
        c.t_final = j.value("t_final", c.t_final);
        if (j.contains("oracle_times"))
            c.oracle_times = j.at("oracle_times").get<std::vector<double>>();
        if (j.contains("convergence_grids"))
            c.convergence_grids = j.at("convergence_grids").get<std::vector<int>>();
        if (j.contains("output")) {
            c.out_dir = j.at("output").value("dir", c.out_dir);
            c.format = j.at("output").value("format", c.format);
        }
        if (j.contains("tolerances")) from_json_into(j.at("tolerances"), c.tolerances);
    } catch (const json::exception& e) {
        throw ConfigInvalid(std::string("malformed config: ") + e.what());
    }
    c.validate();
    return c;
}

inline ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot open config " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigInvalid(std::string("config is not valid JSON: ") + e.what());
    }
    return scenario_config_from_json(j);
}

// ---------------------------------------------------------------------------
// Named closed-form initial data
// ---------------------------------------------------------------------------

struct NamedInitialData {
    InitialData data;
    bool has_exact = false;
    std::function<double(double, double, double)> exact_u;  // (x, y, t)
    std::function<double(double, double, double)> exact_v;
    std::function<double(double, double, double)> exact_phi;  // defined for tanh-pair
};

/// a e^theta / (1 + a e^theta), evaluated in the branch that cannot overflow.
inline double logistic_fraction(double a, double theta) {
    if (theta > 0.0) {
        const double e = std::exp(-theta);
        return a / (a + e);
    }
    const double e = a * std::exp(theta);
    return e / (1.0 + e);
}

inline NamedInitialData make_named_initial_data(const InitialDataSpec& spec,
                                                const ConstantPair& bg, double t0) {
    NamedInitialData named;
    named.data.background = bg;
    named.data.x0 = 0.0;
    named.data.y0 = 0.0;

    if (spec.kind == "constants") {
        const double a = spec.a, b = spec.b;
        named.data.s = [a](double, double) { return a; };
        named.data.k = [b](double, double) { return b; };
        named.has_exact = true;
        named.exact_u = [a](double, double, double) { return a; };
        named.exact_v = [b](double, double, double) { return b; };
    } else if (spec.kind == "tanh-pair") {
        // the lift of phi = 1 + a e^{kx + ly + wt} over this background
        const double a = spec.a, k = spec.k, l = spec.l;
        if (a <= 0.0) throw ConfigInvalid("tanh-pair amplitude must be positive");
        const double w = plane_wave_rate(k, l, bg);
        auto theta = [k, l, w](double x, double y, double t) { return k * x + l * y + w * t; };
        named.exact_u = [=](double x, double y, double t) {
            return bg.u0 + k * logistic_fraction(a, theta(x, y, t));
        };
        named.exact_v = [=](double x, double y, double t) {
            return bg.v0 + l * logistic_fraction(a, theta(x, y, t));
        };
        named.exact_phi = [=](double x, double y, double t) {
            return 1.0 + a * std::exp(theta(x, y, t));
        };
        named.has_exact = true;
        named.data.s = [fu = named.exact_u, t0](double x, double y) { return fu(x, y, t0); };
        named.data.k = [fv = named.exact_v, t0](double x, double y) { return fv(x, y, t0); };
    } else if (spec.kind == "gaussian-bump") {
        // gradient of ln(1 + a exp(-(x^2+y^2)/(2 sigma^2))): compatible by
        // construction, decays to the background away from the bump
        const double a = spec.a, s2 = spec.sigma * spec.sigma;
        if (a <= 0.0 || s2 <= 0.0) throw ConfigInvalid("gaussian-bump needs positive a, sigma");
        auto frac = [a, s2](double x, double y) {
            return logistic_fraction(a, -(x * x + y * y) / (2.0 * s2));
        };
        named.data.s = [=, u0 = bg.u0](double x, double y) {
            return u0 - (x / s2) * frac(x, y);
        };
        named.data.k = [=, v0 = bg.v0](double x, double y) {
            return v0 - (y / s2) * frac(x, y);
        };
        named.has_exact = false;
    } else {
        throw ConfigInvalid("unknown initial data kind: " + spec.kind);
    }
    return named;
}

// ---------------------------------------------------------------------------
// Run reports
// ---------------------------------------------------------------------------

struct CheckResult {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string op = "<=";  // pass iff measured (op) tolerance
    bool pass = false;
    std::string note;
};

struct RunReport {
    int schema_version = 1;
    std::string scenario;
    std::uint64_t rng_seed = 0;
    std::vector<CheckResult> checks;
    std::map<std::string, std::string> environment;
    double wall_seconds = 0.0;  // serialized separately to keep reports deterministic

    bool passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return !checks.empty();
    }

    json to_json() const {
        json arr = json::array();
        for (const auto& c : checks) {
            json jc{{"name", c.name},
                    {"measured", c.measured},
                    {"tolerance", c.tolerance},
                    {"op", c.op},
                    {"pass", c.pass}};
            if (!c.note.empty()) jc["note"] = c.note;
            arr.push_back(jc);
        }
        return json{{"schema_version", schema_version},
                    {"scenario", scenario},
                    {"rng_seed", rng_seed},
                    {"environment", environment},
                    {"checks", arr},
                    {"passed", passed()}};
    }
};

namespace detail {

inline std::map<std::string, std::string> environment_fingerprint() {
    return {{"compiler", __VERSION__},
            {"cpp_standard", std::to_string(__cplusplus)},
            {"fp_digits", std::to_string(std::numeric_limits<double>::digits)}};
}

/// Runs one named check; module errors become failed checks, not crashes.
class CheckRunner {
public:
    explicit CheckRunner(RunReport& report) : report_(report) {}

    void max_le(const std::string& name, const std::function<double()>& body, double tol) {
        run(name, body, tol, "<=");
    }

    void min_ge(const std::string& name, const std::function<double()>& body, double tol) {
        run(name, body, tol, ">=");
    }

private:
    void run(const std::string& name, const std::function<double()>& body, double tol,
             const std::string& op) {
        CheckResult result;
        result.name = name;
        result.tolerance = tol;
        result.op = op;
        try {
            result.measured = body();
            result.pass =
                op == "<=" ? (result.measured <= tol) : (result.measured >= tol);
        } catch (const Error& e) {
            result.measured = std::numeric_limits<double>::quiet_NaN();
            result.pass = false;
            result.note = e.what();
        }
        report_.checks.push_back(result);
    }

    RunReport& report_;
};

inline void emit_field(const ScalarField2D& f, const std::filesystem::path& dir,
                       const std::string& stem, const std::string& format) {
    std::filesystem::create_directories(dir);
    const std::string path = (dir / (stem + (format == "bin" ? ".bin" : ".csv"))).string();
    if (format == "bin")
        write_binary(f, path);
    else
        write_csv(f, path);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Scenario implementations
// ---------------------------------------------------------------------------

namespace detail {

inline double max_pair_residual(const SolutionPair& pair, const std::vector<Point3>& pts,
                                JetOrder order) {
    double worst = 0.0;
    for (const auto& p : pts) {
        const auto [r1, r2] = burgers_residual(pair, p.x, p.y, p.t, order);
        worst = std::max({worst, std::abs(r1), std::abs(r2)});
    }
    return worst;
}

inline double max_pair_compat(const SolutionPair& pair, const std::vector<Point3>& pts,
                              JetOrder order) {
    double worst = 0.0;
    for (const auto& p : pts)
        worst = std::max(worst, std::abs(compatibility_residual(pair, p.x, p.y, p.t, order)));
    return worst;
}

inline void run_exact_recurrence(const ScenarioConfig& cfg, RunReport& report,
                                 std::vector<std::pair<std::string, ScalarField2D>>& fields) {
    CheckRunner check(report);
    const auto pts = sample_points(SampleBox{}, cfg.sample_count, cfg.rng_seed);
    const HeatSolution seed = make_plane_wave_seed(cfg.background, cfg.seed_terms);

    check.max_le(
        "seed-linear-residual",
        [&] { return validate_bt_premises(seed, cfg.background, pts).max_heat_residual; },
        cfg.tolerances.seed_residual);

    SolutionPair pair = cole_hopf_lift(seed, cfg.background);
    check.max_le(
        "lift-burgers-residual", [&] { return max_pair_residual(pair, pts, JetOrder(2)); },
        cfg.tolerances.lift_residual);
    check.max_le(
        "lift-compatibility", [&] { return max_pair_compat(pair, pts, JetOrder(1)); },
        cfg.tolerances.compatibility);

    for (int d = 1; d <= cfg.depth; ++d) {
        const SolutionPair prev = pair;
        pair = recurrence_step(prev);
        check.max_le(
            "depth-" + std::to_string(d) + "-burgers-residual",
            [&] { return max_pair_residual(pair, pts, JetOrder(2)); },
            cfg.tolerances.recurrence_residual);
        check.max_le(
            "depth-" + std::to_string(d) + "-compatibility",
            [&] { return max_pair_compat(pair, pts, JetOrder(1)); },
            cfg.tolerances.compatibility);
        if (d == cfg.depth) {
            // Eq-consistency of the two constructions: the recurrence applied
            // to the pair versus the general lift with phi = u + v
            check.max_le(
                "recurrence-lift-consistency",
                [&] {
                    JetFn phi = [u = prev.u, v = prev.v](double x, double y, double t,
                                                         JetOrder n) {
                        return u(x, y, t, n) + v(x, y, t, n);
                    };
                    const SolutionPair lifted =
                        backlund_lift(phi, prev.order_budget, prev, prev.lineage);
                    double worst = 0.0;
                    for (const auto& p : pts) {
                        const JetOrder n0(0);
                        worst = std::max(worst,
                                         std::abs(pair.u(p.x, p.y, p.t, n0).value() -
                                                  lifted.u(p.x, p.y, p.t, n0).value()));
                        worst = std::max(worst,
                                         std::abs(pair.v(p.x, p.y, p.t, n0).value() -
                                                  lifted.v(p.x, p.y, p.t, n0).value()));
                    }
                    return worst;
                },
                cfg.tolerances.consistency);
        }
    }

    const std::string tag = "depth" + std::to_string(cfg.depth);
    fields.emplace_back("u_" + tag,
                        ScalarField2D::sample(cfg.box, cfg.box.t0, [&](double x, double y) {
                            return pair.u(x, y, cfg.box.t0, JetOrder(0)).value();
                        }));
    fields.emplace_back("v_" + tag,
                        ScalarField2D::sample(cfg.box, cfg.box.t0, [&](double x, double y) {
                            return pair.v(x, y, cfg.box.t0, JetOrder(0)).value();
                        }));
}

inline void run_ivp_pipeline(const ScenarioConfig& cfg, RunReport& report,
                             std::vector<std::pair<std::string, ScalarField2D>>& fields) {
    CheckRunner check(report);
    const NamedInitialData named =
        make_named_initial_data(cfg.initial_data, cfg.background, cfg.box.t0);

    check.max_le(
        "path-independence",
        [&] {
            return path_independence_check(named.data, 0.25 * cfg.box.Lx, 0.25 * cfg.box.Ly);
        },
        cfg.tolerances.path_independence);

    const ScalarField2D f = build_initial_data(named.data, cfg.box);
    check.min_ge(
        "initial-datum-positivity", [&] { return f.min(); },
        std::numeric_limits<double>::min());

    if (named.has_exact && named.exact_phi) {
        // f should equal C phi e^{-u0 x - v0 y}; measure constancy of the ratio
        check.max_le(
            "transform-ratio-constancy",
            [&] {
                const double r0 = f.at(0, 0) *
                                  std::exp(cfg.background.u0 * cfg.box.x(0) +
                                           cfg.background.v0 * cfg.box.y(0)) /
                                  named.exact_phi(cfg.box.x(0), cfg.box.y(0), cfg.box.t0);
                double worst = 0.0;
                for (int i = 0; i < cfg.box.nx; ++i)
                    for (int j = 0; j < cfg.box.ny; ++j) {
                        const double x = cfg.box.x(i), y = cfg.box.y(j);
                        const double r =
                            f.at(i, j) *
                            std::exp(cfg.background.u0 * x + cfg.background.v0 * y) /
                            named.exact_phi(x, y, cfg.box.t0);
                        worst = std::max(worst, std::abs(r / r0 - 1.0));
                    }
                return worst;
            },
            cfg.tolerances.ratio_constancy);
    }

    const ScalarField2D phi = solve_heat_spectral(f, cfg.background, cfg.t_final);
    check.min_ge(
        "phi-positivity", [&] { return phi.min(); }, std::numeric_limits<double>::min());

    const auto [u, v] = recover_burgers(phi, cfg.background);

    if (named.has_exact) {
        check.max_le(
            "exact-pair-agreement",
            [&] {
                const ScalarField2D ue = ScalarField2D::sample(
                    cfg.box, cfg.t_final,
                    [&](double x, double y) { return named.exact_u(x, y, cfg.t_final); });
                const ScalarField2D ve = ScalarField2D::sample(
                    cfg.box, cfg.t_final,
                    [&](double x, double y) { return named.exact_v(x, y, cfg.t_final); });
                return std::max(max_abs_diff_interior(u, ue), max_abs_diff_interior(v, ve));
            },
            cfg.tolerances.exact_agreement);
    }

    // front data are not periodic; their seam contaminates a global spectral
    // curl, so the check applies to the decaying families only
    if (cfg.initial_data.kind != "tanh-pair") {
        check.max_le(
            "recovered-compatibility",
            [&] {
                const ScalarField2D uy = spectral_derivative(u, Axis2D::Y);
                const ScalarField2D vx = spectral_derivative(v, Axis2D::X);
                return max_abs_diff(uy, vx);
            },
            cfg.tolerances.compatibility);
    }

    fields.emplace_back("f0", f);
    fields.emplace_back("phi", phi);
    fields.emplace_back("u", u);
    fields.emplace_back("v", v);
}

/// Pipeline and finite-difference answers for one grid size; returns the
/// interior-half discrepancy and, when exact data is known, both errors.
struct XvalResult {
    double discrepancy = 0.0;
    double fd_error_vs_exact = 0.0;
};

inline XvalResult cross_validate_once(const ScenarioConfig& cfg, int n) {
    DomainBox box = cfg.box;
    box.nx = box.ny = n;
    const NamedInitialData named =
        make_named_initial_data(cfg.initial_data, cfg.background, box.t0);

    const ScalarField2D f = build_initial_data(named.data, box);
    const ScalarField2D phi = solve_heat_spectral(f, cfg.background, cfg.t_final);
    const auto [u_sp, v_sp] = recover_burgers(phi, cfg.background);

    const ScalarField2D u0 = ScalarField2D::sample(box, box.t0, named.data.s);
    const ScalarField2D v0 = ScalarField2D::sample(box, box.t0, named.data.k);
    const FDState fd = fd_integrate(make_fd_state(u0, v0), cfg.t_final);

    XvalResult result;
    result.discrepancy =
        std::max(max_abs_diff_interior(u_sp, fd.u), max_abs_diff_interior(v_sp, fd.v));
    if (named.has_exact) {
        const ScalarField2D ue = ScalarField2D::sample(box, cfg.t_final, [&](double x, double y) {
            return named.exact_u(x, y, cfg.t_final);
        });
        const ScalarField2D ve = ScalarField2D::sample(box, cfg.t_final, [&](double x, double y) {
            return named.exact_v(x, y, cfg.t_final);
        });
        result.fd_error_vs_exact =
            std::max(max_abs_diff_interior(fd.u, ue), max_abs_diff_interior(fd.v, ve));
    }
    return result;
}

inline void run_cross_validate(const ScenarioConfig& cfg, RunReport& report,
                               std::vector<std::pair<std::string, ScalarField2D>>& fields) {
    CheckRunner check(report);

    check.max_le(
        "pipeline-vs-fd",
        [&] { return cross_validate_once(cfg, cfg.box.nx).discrepancy; },
        cfg.tolerances.cross_validation);

    if (cfg.convergence_grids.size() >= 3) {
        check.min_ge(
            "fd-convergence-order",
            [&] {
                std::vector<double> errs;
                for (int n : cfg.convergence_grids)
                    errs.push_back(cross_validate_once(cfg, n).fd_error_vs_exact);
                double worst = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i + 1 < errs.size(); ++i)
                    worst = std::min(worst, std::log2(errs[i] / errs[i + 1]));
                return worst;
            },
            cfg.tolerances.convergence_order);
    }

    // emit the fields from the configured grid for inspection
    const NamedInitialData named =
        make_named_initial_data(cfg.initial_data, cfg.background, cfg.box.t0);
    const ScalarField2D f = build_initial_data(named.data, cfg.box);
    const ScalarField2D phi = solve_heat_spectral(f, cfg.background, cfg.t_final);
    const auto [u_sp, v_sp] = recover_burgers(phi, cfg.background);
    const FDState fd =
        fd_integrate(make_fd_state(ScalarField2D::sample(cfg.box, cfg.box.t0, named.data.s),
                                   ScalarField2D::sample(cfg.box, cfg.box.t0, named.data.k)),
                     cfg.t_final);
    fields.emplace_back("u_pipeline", u_sp);
    fields.emplace_back("v_pipeline", v_sp);
    fields.emplace_back("u_fd", fd.u);
    fields.emplace_back("v_fd", fd.v);
}

inline void run_oracle_compare(const ScenarioConfig& cfg, RunReport& report,
                               std::vector<std::pair<std::string, ScalarField2D>>& fields) {
    CheckRunner check(report);
    const DomainBox& box = cfg.box;
    const ScalarField2D f = ScalarField2D::sample(box, box.t0, [&](double x, double y) {
        return std::exp(std::cos(2.0 * M_PI * x / box.Lx) + std::cos(2.0 * M_PI * y / box.Ly));
    });

    for (std::size_t i = 0; i < cfg.oracle_times.size(); ++i) {
        const double tau = cfg.oracle_times[i];
        check.max_le(
            "spectral-vs-kernel-tau" + std::to_string(i),
            [&] {
                const ScalarField2D sp = solve_heat_spectral(f, cfg.background, box.t0 + tau);
                const ScalarField2D kq = kernel_convolve_oracle(f, cfg.background, box.t0 + tau);
                if (i == 0) {
                    fields.emplace_back("phi_spectral", sp);
                    fields.emplace_back("phi_kernel", kq);
                }
                return max_abs_diff(sp, kq);
            },
            cfg.tolerances.oracle_agreement);
    }

    check.max_le(
        "semigroup",
        [&] {
            const double tau = cfg.oracle_times.back();
            const ScalarField2D one = solve_heat_spectral(f, cfg.background, box.t0 + tau);
            const ScalarField2D half =
                solve_heat_spectral(f, cfg.background, box.t0 + 0.5 * tau);
            const ScalarField2D two = solve_heat_spectral(half, cfg.background, box.t0 + tau);
            return max_abs_diff(one, two);
        },
        cfg.tolerances.semigroup);

    check.max_le(
        "constant-fixed-point",
        [&] {
            const ScalarField2D ones =
                ScalarField2D::sample(box, box.t0, [](double, double) { return 1.0; });
            const ScalarField2D evolved =
                solve_heat_spectral(ones, cfg.background, box.t0 + cfg.oracle_times.back());
            double worst = 0.0;
            for (double v : evolved.values) worst = std::max(worst, std::abs(v - 1.0));
            return worst;
        },
        cfg.tolerances.fixed_point);

    // translation property: a drifting background equals the driftless
    // solution sampled at shifted coordinates; exact when the shift is a
    // whole number of cells
    check.max_le(
        "translation-property",
        [&] {
            const double tau = 0.1;
            const double u0 = box.hx() / tau;        // shift of exactly 2 cells
            const double v0 = -0.5 * box.hy() / tau;  // shift of exactly -1 cell
            const ScalarField2D drift =
                solve_heat_spectral(f, ConstantPair{u0, v0}, box.t0 + tau);
            const ScalarField2D plain =
                solve_heat_spectral(f, ConstantPair{0.0, 0.0}, box.t0 + tau);
            double worst = 0.0;
            for (int i = 0; i < box.nx; ++i)
                for (int j = 0; j < box.ny; ++j) {
                    const int is = (i + 2 + box.nx) % box.nx;
                    const int js = (j - 1 + box.ny) % box.ny;
                    worst = std::max(worst, std::abs(drift.at(i, j) - plain.at(is, js)));
                }
            return worst;
        },
        cfg.tolerances.translation);

    check.max_le(
        "kernel-mass-conservation",
        [&] {
            const NamedInitialData bump = make_named_initial_data(
                InitialDataSpec{"gaussian-bump", 1.0, 0.0, 1.0, 1.0, 1.0}, ConstantPair{},
                box.t0);
            const ScalarField2D g = build_initial_data(bump.data, box);
            auto total = [&](const ScalarField2D& fld) {
                double acc = 0.0;
                for (double v : fld.values) acc += v;
                return acc * fld.box.hx() * fld.box.hy();
            };
            const double m1 = total(kernel_convolve_oracle(g, ConstantPair{}, box.t0 + 0.05));
            const double m2 = total(kernel_convolve_oracle(g, ConstantPair{}, box.t0 + 0.5));
            return std::abs(m1 - m2) / std::abs(m1);
        },
        cfg.tolerances.conservation);
}

}  // namespace detail

/// Executes the configured scenario, writes field outputs and the report
/// into cfg.out_dir, and returns the report. Failed checks are recorded, not
/// thrown; config errors throw ConfigInvalid before any work starts.
inline RunReport run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();

    RunReport report;
    report.scenario = to_string(cfg.kind);
    report.rng_seed = cfg.rng_seed;
    report.environment = detail::environment_fingerprint();

    std::vector<std::pair<std::string, ScalarField2D>> fields;
    try {
        switch (cfg.kind) {
            case ScenarioKind::ExactRecurrence:
                detail::run_exact_recurrence(cfg, report, fields);
                break;
            case ScenarioKind::IvpPipeline:
                detail::run_ivp_pipeline(cfg, report, fields);
                break;
            case ScenarioKind::CrossValidate:
                detail::run_cross_validate(cfg, report, fields);
                break;
            case ScenarioKind::OracleCompare:
                detail::run_oracle_compare(cfg, report, fields);
                break;
        }
    } catch (const Error& e) {
        // module errors outside an individual check (field sampling and the
        // like) still surface as a failed check, never as a crash
        CheckResult failed;
        failed.name = "scenario-execution";
        failed.measured = std::numeric_limits<double>::quiet_NaN();
        failed.pass = false;
        failed.note = e.what();
        report.checks.push_back(failed);
    }

    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::filesystem::path dir(cfg.out_dir);
    std::filesystem::create_directories(dir);
    for (const auto& [stem, field] : fields) detail::emit_field(field, dir, stem, cfg.format);
    {
        std::ofstream out(dir / "report.json");
        if (!out) throw IoError("cannot write report to " + cfg.out_dir);
        out << report.to_json().dump(2) << "\n";
    }
    {
        // wall-clock goes to a separate file so report.json stays bit-stable
        std::ofstream out(dir / "timings.txt");
        out << "wall_seconds " << report.wall_seconds << "\n";
    }
    {
        std::ofstream out(dir / "config.json");
        out << to_json(cfg).dump(2) << "\n";
    }
    return report;
}

}  // namespace burgers
