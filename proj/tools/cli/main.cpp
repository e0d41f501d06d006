#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "besov_rough/errors.hpp"
#include "besov_rough/parallel.hpp"
#include "commands.hpp"

#ifndef BESOV_ROUGH_VERSION
#define BESOV_ROUGH_VERSION "0.0.0"
#endif
#ifndef BESOV_ROUGH_REVISION
#define BESOV_ROUGH_REVISION "unknown"
#endif

namespace cli = besov_rough::cli;

namespace {

int report_error(int code, const std::string& kind, const std::string& message) {
    std::cerr << nlohmann::json{{"error", {{"code", code}, {"kind", kind}, {"message", message}}}}.dump() << std::endl;
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Besov-scale rough path analysis on sampled paths"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("besov-rough ") + BESOV_ROUGH_VERSION + " (revision " +
                                          BESOV_ROUGH_REVISION + ")");
    unsigned workers = 0;
    bool workers_set = false;
    app.add_option_function<unsigned>("--workers", [&](unsigned w) {
        workers = w;
        workers_set = true;
    }, "Worker cap (fallback: BESOV_ROUGH_WORKERS; 0 = hardware concurrency)");

    int code = cli::kOk;
    std::function<int()> action;

    cli::NormArgs norm;
    auto* s_norm = app.add_subcommand("norm", "Besov seminorm of a sampled path");
    s_norm->add_option("--input", norm.input, "Path CSV")->required();
    s_norm->add_option("--alpha", norm.alpha);
    s_norm->add_option("--p", norm.p);
    s_norm->add_option("--q", norm.q, "Secondary index (inf allowed)");
    s_norm->add_option("--form", norm.form, "dyadic|integral");
    s_norm->add_option("--out", norm.out, "Report JSON (stdout when absent)");
    s_norm->callback([&] { action = [&] { return cli::run_norm(norm); }; });

    cli::VarArgs var;
    auto* s_var = app.add_subcommand("var", "Exact p-variation and oscillation variation");
    s_var->add_option("--input", var.input, "Path CSV")->required();
    s_var->add_option("--p", var.p);
    s_var->add_option("--out", var.out, "Report JSON (stdout when absent)");
    s_var->callback([&] { action = [&] { return cli::run_var(var); }; });

    cli::SewArgs sew;
    auto* s_sew = app.add_subcommand("sew", "Sew a two-parameter germ");
    s_sew->add_option("--germ", sew.germ, "Germ CSV rows i,j,v0..")->required();
    s_sew->add_option("--gamma", sew.gamma);
    s_sew->add_option("--p2", sew.p2);
    s_sew->add_option("--q2", sew.q2);
    s_sew->add_option("--horizon", sew.horizon);
    s_sew->add_flag("--endpoint", sew.endpoint, "Critical case gamma = max(1, 1/p2)");
    s_sew->add_option("--out", sew.out, "Result JSON (stdout when absent)");
    s_sew->callback([&] { action = [&] { return cli::run_sew(sew); }; });

    cli::YoungOdeArgs yode;
    auto* s_yode = app.add_subcommand("young-ode", "Solve dY = F(Y) dX for a Young driver");
    s_yode->add_option("--driver", yode.driver, "Driver path CSV")->required();
    s_yode->add_option("--field", yode.field, "builtin:<name> or coefficient JSON")->required();
    s_yode->add_option("--y0", yode.y0, "Initial value, comma separated")->required()->delimiter(',');
    s_yode->add_option("--alpha", yode.alpha);
    s_yode->add_option("--p", yode.p);
    s_yode->add_option("--q", yode.q);
    s_yode->add_option("--out", yode.out, "Solution CSV")->required();
    s_yode->add_option("--report", yode.report, "Report JSON");
    s_yode->callback([&] { action = [&] { return cli::run_young_ode(yode); }; });

    cli::LiftArgs lift;
    auto* s_lift = app.add_subcommand("lift", "Build a rough path and write it to a directory");
    s_lift->add_option("--kind", lift.kind, "bm|fbm|canonical");
    s_lift->add_option("--H", lift.hurst, "Hurst index (fbm)");
    s_lift->add_option("--n", lift.n, "Base dimension");
    s_lift->add_option("--N", lift.N, "Depth");
    s_lift->add_option("--level", lift.level, "Grid level L (2^L cells)");
    s_lift->add_option("--horizon", lift.horizon);
    s_lift->add_option("--seed", lift.seed);
    s_lift->add_option("--flavor", lift.flavor, "ito|stratonovich");
    s_lift->add_option("--input", lift.input, "Path CSV (canonical)");
    s_lift->add_option("--alpha", lift.alpha);
    s_lift->add_option("--p", lift.p);
    s_lift->add_option("--q", lift.q);
    s_lift->add_option("--out", lift.out, "Output directory")->required();
    s_lift->callback([&] { action = [&] { return cli::run_lift(lift); }; });

    cli::ExtendArgs ext;
    auto* s_ext = app.add_subcommand("extend", "Lyons extension of a rough path");
    s_ext->add_option("--rough", ext.rough, "Rough path directory")->required();
    s_ext->add_option("--N", ext.N, "Target depth");
    s_ext->add_option("--out", ext.out, "Output directory")->required();
    s_ext->callback([&] { action = [&] { return cli::run_extend(ext); }; });

    cli::IntegrateArgs integ;
    auto* s_int = app.add_subcommand("integrate", "Rough integral of F(X) against X, or Young integral of f against g");
    s_int->add_option("--driver", integ.driver, "Rough path directory");
    s_int->add_option("--field", integ.field, "builtin:<name> or coefficient JSON");
    s_int->add_option("--f", integ.f, "Integrand path CSV (Young)");
    s_int->add_option("--g", integ.g, "Integrator path CSV (Young)");
    s_int->add_option("--alpha", integ.alpha);
    s_int->add_option("--p", integ.p);
    s_int->add_option("--q", integ.q);
    s_int->add_option("--alpha-g", integ.alpha_g);
    s_int->add_option("--p-g", integ.p_g);
    s_int->add_option("--q-g", integ.q_g);
    s_int->add_option("--out", integ.out, "Integral path CSV")->required();
    s_int->add_option("--report", integ.report, "Report JSON");
    s_int->callback([&] { action = [&] { return cli::run_integrate(integ); }; });

    cli::RdeArgs rde;
    auto* s_rde = app.add_subcommand("rde", "Solve a level-2 rough differential equation");
    s_rde->add_option("--driver", rde.driver, "Rough path directory")->required();
    s_rde->add_option("--field", rde.field, "builtin:<name> or coefficient JSON")->required();
    s_rde->add_option("--y0", rde.y0, "Initial value, comma separated")->required()->delimiter(',');
    s_rde->add_option("--tol", rde.tol);
    s_rde->add_option("--max-halvings", rde.max_halvings);
    s_rde->add_option("--out", rde.out, "Solution CSV")->required();
    s_rde->add_option("--out-derivative", rde.out_derivative, "Gubinelli derivative CSV");
    s_rde->add_option("--report", rde.report, "Report JSON");
    s_rde->callback([&] { action = [&] { return cli::run_rde(rde); }; });

    cli::McArgs mc;
    auto* s_mc = app.add_subcommand("mc", "Monte Carlo experiments");
    s_mc->add_option("--experiment", mc.experiment, "bm-ynp|fbm-ynp|pprod-bdg");
    s_mc->add_option("--config", mc.config, "Config JSON");
    s_mc->add_option("--seed", mc.seed);
    s_mc->add_option("--samples", mc.samples);
    s_mc->add_option("--out", mc.out, "Results CSV (stdout when absent)");
    s_mc->add_option("--report", mc.report, "Summary JSON");
    s_mc->callback([&] { action = [&] { return cli::run_mc(mc); }; });

    cli::AcceptArgs acc;
    auto* s_acc = app.add_subcommand("accept", "Run the acceptance suite");
    s_acc->add_option("--suite", acc.suite, "primary");
    s_acc->add_option("--config", acc.config, "Config JSON with seed and tolerance overrides");
    s_acc->add_option("--only", acc.only, "Criterion ids");
    s_acc->add_option("--seed", acc.seed);
    s_acc->add_option("--out", acc.out, "Results JSON");
    s_acc->add_flag("--strict", acc.strict, "Exit 4 if a criterion fails");
    s_acc->callback([&] { action = [&] { return cli::run_accept(acc); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error(cli::kIo, "usage", e.what());
    }

    if (!workers_set) {
        if (const char* env = std::getenv("BESOV_ROUGH_WORKERS")) {
            try {
                workers = static_cast<unsigned>(std::stoul(env));
            } catch (const std::exception&) {
                return report_error(cli::kIo, "usage", std::string("BESOV_ROUGH_WORKERS is not a number: ") + env);
            }
        }
    }
    besov_rough::set_workers(workers);

    try {
        code = action();
    } catch (const besov_rough::RegimeError& e) {
        return report_error(cli::kRegime, "regime", e.what());
    } catch (const besov_rough::NumericalError& e) {
        return report_error(cli::kNumerical, "numerical", e.what());
    } catch (const besov_rough::IoError& e) {
        return report_error(cli::kIo, "io", e.what());
    } catch (const std::exception& e) {
        return report_error(cli::kIo, "input", e.what());
    }
    return code;
}
