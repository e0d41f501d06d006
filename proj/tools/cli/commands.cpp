#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "acceptance.hpp"
#include "besov_rough/controlled.hpp"
#include "besov_rough/errors.hpp"
#include "besov_rough/io.hpp"
#include "besov_rough/norms.hpp"
#include "besov_rough/random.hpp"
#include "besov_rough/rough.hpp"
#include "besov_rough/sewing.hpp"
#include "besov_rough/stochlab.hpp"
#include "besov_rough/young.hpp"

namespace besov_rough::cli {

using nlohmann::json;

double parse_real(const std::string& text, const std::string& what) {
    if (text == "inf" || text == "+inf" || text == "infinity") return kInf;
    if (text == "-inf") return -kInf;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size() || !std::isfinite(v))
        throw std::invalid_argument("option " + what + ": '" + text + "' is not a real number");
    return v;
}

namespace {

std::string read_text(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open '" + file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

LiftFlavor parse_flavor(const std::string& s) {
    if (s == "ito") return LiftFlavor::ito;
    if (s == "stratonovich" || s == "strat") return LiftFlavor::stratonovich;
    throw std::invalid_argument("unknown lift flavor '" + s + "' (ito|stratonovich)");
}

/// "builtin:<name>" or a JSON coefficient file.
VectorField load_field(const std::string& source, std::size_t m, std::size_t n) {
    const std::string prefix = "builtin:";
    if (source.rfind(prefix, 0) == 0) return builtin_field(source.substr(prefix.size()), m, n);
    return field_from_json_text(read_text(source), m, n);
}

void emit_json(const json& j, const std::string& out) {
    if (out.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json_file(out, j);
}

json params_json(const BesovParams& P) {
    return {{"alpha", json_number(P.alpha)}, {"p", json_number(P.p)}, {"q", json_number(P.q)}};
}

json path_json(const GridPath& Y) {
    json rows = json::array();
    for (std::size_t i = 0; i < Y.size(); ++i) {
        json r = json::array();
        for (double v : Y.row(i)) r.push_back(json_number(v));
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_rows_csv(const std::string& file, const std::vector<McRow>& rows) {
    std::ostringstream os;
    os << "key,key_value,statistic,estimate,stderr,samples\n";
    for (const McRow& r : rows)
        os << r.key << ',' << format_double(r.key_value) << ',' << r.statistic << ',' << format_double(r.estimate) << ','
           << format_double(r.stderr_) << ',' << r.samples << '\n';
    if (file.empty() || file == "-") {
        std::cout << os.str();
        return;
    }
    std::ofstream out(file);
    if (!out) throw IoError("cannot write '" + file + "'");
    out << os.str();
}

}  // namespace

int run_norm(const NormArgs& a) {
    const GridPath f = read_path_csv(a.input);
    const BesovParams P{parse_real(a.alpha, "--alpha"), parse_real(a.p, "--p"), parse_real(a.q, "--q")};
    BesovForm form;
    if (a.form == "dyadic")
        form = BesovForm::dyadic;
    else if (a.form == "integral")
        form = BesovForm::integral;
    else
        throw std::invalid_argument("--form must be dyadic or integral");
    const BesovReport rep = besov_report(f, P, form);
    json levels = json::array();
    for (const BesovLevel& l : rep.levels)
        levels.push_back({{"n", l.n}, {"h", json_number(l.h)}, {"lp_increment_norm", json_number(l.lp_increment_norm)}});
    json params = params_json(P);
    params["form"] = a.form;
    emit_json({{"seminorm", json_number(rep.seminorm)}, {"levels", levels}, {"params", params}}, a.out);
    if (!a.out.empty()) std::cout << "seminorm " << format_double(rep.seminorm) << "\n";
    return kOk;
}

int run_var(const VarArgs& a) {
    const GridPath f = read_path_csv(a.input);
    const double p = parse_real(a.p, "--p");
    const VariationResult v = pvariation_partition(f, p);
    json j{{"p", json_number(p)}, {"pvariation", json_number(v.value)}, {"partition", v.partition}};
    j["oscillation_variation"] = f.dim() == 1 ? json_number(oscillation_variation(f, p)) : json(nullptr);
    emit_json(j, a.out);
    return kOk;
}

int run_sew(const SewArgs& a) {
    SewingInput in;
    in.germ = read_germ_csv(a.germ, parse_real(a.horizon, "--horizon"));
    in.gamma = parse_real(a.gamma, "--gamma");
    in.p2 = parse_real(a.p2, "--p2");
    in.q2 = parse_real(a.q2, "--q2");
    in.endpoint = a.endpoint;
    if (a.endpoint) in.modulus = EndpointModulus{in.q2, 0.1, in.p2};
    const SewingResult res = sew(in);
    json levels = json::array();
    for (const SewingLevel& l : res.levels) levels.push_back({{"n", l.n}, {"diff_norm", json_number(l.diff_norm)}});
    json j{{"integral_path", path_json(res.integral)},
           {"remainder_norm", json_number(res.remainder_norm)},
           {"levels", levels},
           {"slope", nullptr},
           {"expected_slope", nullptr}};
    const int L = in.germ.grid().level();
    if (L >= 6) {
        const RateCertificate cert = rate_certificate(res, in.gamma, in.p2, 2, L - 2);
        j["slope"] = json_number(cert.slope);
        j["expected_slope"] = json_number(cert.expected);
        j["r2"] = json_number(cert.r2);
    }
    emit_json(j, a.out);
    return kOk;
}

int run_young_ode(const YoungOdeArgs& a) {
    const GridPath X = read_path_csv(a.driver);
    const VectorField F = load_field(a.field, a.y0.size(), X.dim());
    const BesovParams P{parse_real(a.alpha, "--alpha"), parse_real(a.p, "--p"), parse_real(a.q, "--q")};
    const YoungOdeResult res = young_ode_solve(F, X, a.y0, P);
    write_path_csv(a.out, res.Y);
    if (!a.report.empty())
        write_json_file(a.report, {{"iterations", res.iterations},
                                   {"block_iterations", res.block_iterations},
                                   {"boundaries", res.boundaries},
                                   {"bound_M", json_number(res.bound_M)},
                                   {"driver_seminorm", json_number(res.driver_seminorm)},
                                   {"params", params_json(P)}});
    return kOk;
}

int run_lift(const LiftArgs& a) {
    if (a.out.empty()) throw std::invalid_argument("lift needs --out <dir>");
    const LiftFlavor flavor = parse_flavor(a.flavor);
    const double horizon = parse_real(a.horizon, "--horizon");
    BesovParams P = kDefaultLiftParams;
    if (a.kind == "fbm") P.alpha = a.hurst - 0.05;
    if (!a.alpha.empty()) P.alpha = parse_real(a.alpha, "--alpha");
    P.p = parse_real(a.p, "--p");
    P.q = parse_real(a.q, "--q");
    const std::uint64_t seed = stream_seed(a.seed, "lift/" + a.kind);

    RoughPath X;
    if (a.kind == "bm") {
        X = brownian_lift(a.n, UniformGrid(horizon, a.level), seed, flavor, P);
        if (a.N > 2) X = lyons_extend(X, a.N);
        if (a.N < 2) X = X.truncate(a.N);
    } else if (a.kind == "fbm") {
        const GridPath x = fbm_path(a.hurst, UniformGrid(horizon, a.level), seed, static_cast<std::size_t>(a.n));
        X = canonical_lift(x, a.N, flavor, P);
    } else if (a.kind == "canonical") {
        if (a.input.empty()) throw std::invalid_argument("lift --kind canonical needs --input path.csv");
        X = canonical_lift(read_path_csv(a.input), a.N, flavor, P);
    } else {
        throw std::invalid_argument("--kind must be bm, fbm or canonical");
    }
    write_rough_path(a.out, X);
    return kOk;
}

int run_extend(const ExtendArgs& a) {
    const RoughPath X = read_rough_path(a.rough);
    write_rough_path(a.out, lyons_extend(X, a.N));
    return kOk;
}

int run_integrate(const IntegrateArgs& a) {
    if (!a.driver.empty()) {
        // int F(x) dX for x the driver's path, through the controlled path (F(x), DF(x)).
        const RoughPath X = read_rough_path(a.driver).truncate(2);
        const std::size_t n = static_cast<std::size_t>(X.base_dim());
        const GridPath x = X.path();
        GridPath id(x.grid(), n * n);
        for (std::size_t i = 0; i < id.size(); ++i)
            for (std::size_t c = 0; c < n; ++c) id(i, c * n + c) = 1.0;
        const VectorField F = load_field(a.field, n, n);
        const RoughIntegral I = rough_integral(compose_controlled(F, ControlledPath(X, x, id)), !a.report.empty());
        write_path_csv(a.out, I.Z.Y());
        if (!a.report.empty()) {
            json j{{"remainder_norm", json_number(I.remainder_norm)}, {"params", params_json(X.params())}};
            if (I.endpoint_profile) j["endpoint_profile_decreasing"] = I.endpoint_profile->decreasing;
            write_json_file(a.report, j);
        }
        return kOk;
    }
    if (a.f.empty() || a.g.empty()) throw std::invalid_argument("integrate needs --driver or both --f and --g");
    const GridPath f = read_path_csv(a.f), g = read_path_csv(a.g);
    const BesovParams Pf{parse_real(a.alpha, "--alpha"), parse_real(a.p, "--p"), parse_real(a.q, "--q")};
    const BesovParams Pg{a.alpha_g ? parse_real(*a.alpha_g, "--alpha-g") : Pf.alpha,
                         a.p_g ? parse_real(*a.p_g, "--p-g") : Pf.p, a.q_g ? parse_real(*a.q_g, "--q-g") : Pf.q};
    const YoungRegime regime = YoungRegime::make(Pf, Pg);
    const YoungIntegral I = young_integral(f, g, regime, !a.report.empty());
    write_path_csv(a.out, I.integral);
    if (!a.report.empty())
        write_json_file(a.report, {{"remainder_norm", json_number(I.remainder_norm)},
                                   {"gamma", json_number(regime.gamma)},
                                   {"case", std::string(1, regime.case_tag)}});
    return kOk;
}

int run_rde(const RdeArgs& a) {
    const RoughPath X = read_rough_path(a.driver);
    const VectorField F = load_field(a.field, a.y0.size(), static_cast<std::size_t>(X.base_dim()));
    RdeOptions opts;
    opts.tol = a.tol;
    opts.max_halvings = a.max_halvings;
    opts.with_report = !a.report.empty();
    const RdeResult res = rde_solve(F, X, a.y0, opts);
    write_path_csv(a.out, res.solution.Y());
    if (!a.out_derivative.empty()) write_path_csv(a.out_derivative, res.solution.Yprime());
    if (!a.report.empty()) {
        json j{{"iterations", res.block_iterations},
               {"total_iterations", res.iterations},
               {"boundaries", res.boundaries},
               {"controlled_norm", json_number(res.controlled_norm)},
               {"bound_M", json_number(res.bound_M)},
               {"smallness", json_number(res.smallness)},
               {"davie_slope", nullptr},
               {"davie_norm", nullptr}};
        if (res.davie) {
            j["davie_slope"] = json_number(res.davie->slope);
            j["davie_norm"] = json_number(res.davie->norm);
            j["davie_r2"] = json_number(res.davie->slope_r2);
        }
        write_json_file(a.report, j);
    }
    return kOk;
}

namespace {

// Applies {p, p0, p1} or {p0, p1} tuples.
void apply_tuple(const std::optional<std::vector<double>>& t, double& target, double& e0, double& e1,
                 const char* name) {
    if (!t) return;
    if (t->size() == 2) {
        e0 = (*t)[0];
        e1 = (*t)[1];
    } else if (t->size() == 3) {
        target = (*t)[0];
        e0 = (*t)[1];
        e1 = (*t)[2];
    } else {
        throw IoError(std::string("config key '") + name + "' needs 2 or 3 entries");
    }
}

}  // namespace

int run_mc(const McArgs& a) {
    ExperimentConfig c;
    if (!a.config.empty()) c = config_from_json(read_json_file(a.config));
    std::string experiment = !a.experiment.empty() ? a.experiment : c.experiment.value_or("");
    if (a.seed) c.seed = *a.seed;
    if (a.samples) c.samples = *a.samples;

    std::vector<McRow> rows;
    json report;
    if (experiment == "bm-ynp") {
        BmStatisticConfig cfg;
        if (c.p) cfg.p = *c.p;
        if (c.ns) cfg.ns = *c.ns;
        if (c.level) cfg.level = *c.level;
        if (c.samples) cfg.samples = *c.samples;
        if (c.oracle_samples) cfg.oracle_samples = *c.oracle_samples;
        if (c.seed) cfg.seed = *c.seed;
        if (c.dim) cfg.dim = *c.dim;
        if (c.flavor) cfg.flavor = parse_flavor(*c.flavor);
        const YnpReport rep = bm_besov_statistic(cfg);
        rows = rep.rows();
        report = {{"mean", json_number(rep.mean)},
                  {"variance", json_number(rep.variance)},
                  {"variance_slope", json_number(rep.variance_slope)}};
    } else if (experiment == "fbm-ynp") {
        FbmStatisticConfig cfg;
        if (c.hurst) cfg.hurst = *c.hurst;
        if (c.p) cfg.p = *c.p;
        if (c.ns) cfg.ns = *c.ns;
        if (c.level) cfg.level = *c.level;
        if (c.samples) cfg.samples = *c.samples;
        if (c.seed) cfg.seed = *c.seed;
        if (c.dim) cfg.dim = *c.dim;
        const YnpReport rep = fbm_besov_statistic(cfg);
        rows = rep.rows();
        report = {{"mean", json_number(rep.mean)},
                  {"variance", json_number(rep.variance)},
                  {"variance_slope", json_number(rep.variance_slope)}};
    } else if (experiment == "pprod-bdg") {
        PprodConfig cfg;
        if (c.gamma) {
            if (c.gamma->size() != 2) throw IoError("config key 'gamma' needs 2 entries");
            cfg.gamma0 = (*c.gamma)[0];
            cfg.gamma1 = (*c.gamma)[1];
        }
        apply_tuple(c.p_tuple, cfg.p, cfg.p0, cfg.p1, "p_tuple");
        apply_tuple(c.q_tuple, cfg.q, cfg.q0, cfg.q1, "q_tuple");
        apply_tuple(c.r_tuple, cfg.r, cfg.r0, cfg.r1, "r_tuple");
        if (c.lengths) cfg.lengths = *c.lengths;
        if (c.samples) cfg.samples = *c.samples;
        if (c.seed) cfg.seed = *c.seed;
        if (c.martingale) cfg.kind = parse_martingale_kind(*c.martingale);
        if (c.same) cfg.same = *c.same;
        const PprodReport rep = pprod_bdg_experiment(cfg);
        rows = rep.rows();
        report = {{"gamma", json_number(rep.gamma)},
                  {"p", json_number(rep.p)},
                  {"q", json_number(rep.q)},
                  {"r", json_number(rep.r)},
                  {"ratio_spread", json_number(rep.ratio_spread)},
                  {"bdg_spread", json_number(rep.bdg_spread)}};
    } else {
        throw std::invalid_argument("--experiment must be bm-ynp, fbm-ynp or pprod-bdg");
    }
    write_rows_csv(!a.out.empty() ? a.out : c.output.value_or(""), rows);
    const std::string rep_file = !a.report.empty() ? a.report : c.report.value_or("");
    if (!rep_file.empty()) {
        report["experiment"] = experiment;
        report["config"] = to_json(c);
        write_json_file(rep_file, report);
    }
    return kOk;
}

int run_accept(const AcceptArgs& a) {
    if (a.suite != "primary") throw std::invalid_argument("unknown suite '" + a.suite + "' (only 'primary')");
    acceptance::SuiteOptions opts;
    if (!a.config.empty()) {
        const ExperimentConfig c = config_from_json(read_json_file(a.config));
        opts.tolerances = c.tolerances;
        if (c.seed) opts.seed = *c.seed;
    }
    if (a.seed) opts.seed = *a.seed;
    opts.only = a.only;
    const auto results =
        acceptance::run_primary_suite(opts, [](const auto& r) { std::cout << acceptance::format_line(r) << std::endl; });
    std::size_t failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    std::cout << results.size() - failed << "/" << results.size() << " criteria passed" << std::endl;
    if (!a.out.empty()) write_json_file(a.out, acceptance::to_json(results));
    return a.strict && failed > 0 ? kAcceptanceFailed : kOk;
}

}  // namespace besov_rough::cli
