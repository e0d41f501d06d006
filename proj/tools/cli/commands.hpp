#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace besov_rough::cli {

/// Exit codes of the binary.
enum Exit : int { kOk = 0, kIo = 1, kRegime = 2, kNumerical = 3, kAcceptanceFailed = 4 };

/// Parses a real number; accepts "inf" and "-inf".
double parse_real(const std::string& text, const std::string& what);

struct NormArgs {
    std::string input, out, form = "dyadic", alpha = "0.5", p = "2", q = "inf";
};
struct VarArgs {
    std::string input, out, p = "2";
};
struct SewArgs {
    std::string germ, out, gamma = "2", p2 = "inf", q2 = "inf", horizon = "1";
    bool endpoint = false;
};
struct YoungOdeArgs {
    std::string driver, field, out, report, alpha = "0.9", p = "inf", q = "inf";
    std::vector<double> y0;
};
struct LiftArgs {
    std::string kind = "bm", flavor = "ito", input, out, horizon = "1";
    std::string alpha, p = "8", q = "inf";
    double hurst = 0.4;
    int n = 2, N = 2, level = 10;
    std::uint64_t seed = 42;
};
struct ExtendArgs {
    std::string rough, out;
    int N = 3;
};
struct IntegrateArgs {
    std::string driver, field, f, g, out, report;
    std::string alpha = "0.9", p = "inf", q = "inf";
    std::optional<std::string> alpha_g, p_g, q_g;
};
struct RdeArgs {
    std::string driver, field, out, out_derivative, report;
    std::vector<double> y0;
    double tol = 1e-9;
    int max_halvings = 12;
};
struct McArgs {
    std::string experiment, config, out, report;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
};
struct AcceptArgs {
    std::string suite = "primary", config, out;
    std::vector<int> only;
    std::optional<std::uint64_t> seed;
    bool strict = false;
};

int run_norm(const NormArgs& a);
int run_var(const VarArgs& a);
int run_sew(const SewArgs& a);
int run_young_ode(const YoungOdeArgs& a);
int run_lift(const LiftArgs& a);
int run_extend(const ExtendArgs& a);
int run_integrate(const IntegrateArgs& a);
int run_rde(const RdeArgs& a);
int run_mc(const McArgs& a);
int run_accept(const AcceptArgs& a);

}  // namespace besov_rough::cli
