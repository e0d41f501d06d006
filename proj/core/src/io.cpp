#include "besov_rough/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string_view>

#include "besov_rough/errors.hpp"

namespace besov_rough {

using nlohmann::json;

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::string read_text(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open " + file);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& file, const std::string& text) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw IoError("cannot write " + file);
    out << text;
    if (!out) throw IoError("write failed for " + file);
}

struct Line {
    std::size_t number;
    std::vector<std::string_view> cells;
};

std::vector<Line> split_csv(const std::string& text) {
    std::vector<Line> lines;
    std::size_t pos = 0, number = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        ++number;
        std::string_view line(text.data() + pos, end - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) {
            Line l{number, {}};
            std::size_t c = 0;
            while (true) {
                const std::size_t comma = line.find(',', c);
                std::string_view cell = line.substr(c, comma == std::string_view::npos ? std::string_view::npos : comma - c);
                while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
                while (!cell.empty() && cell.back() == ' ') cell.remove_suffix(1);
                l.cells.push_back(cell);
                if (comma == std::string_view::npos) break;
                c = comma + 1;
            }
            lines.push_back(std::move(l));
        }
        if (end == text.size()) break;
        pos = end + 1;
    }
    return lines;
}

[[noreturn]] void fail_at(const std::string& origin, std::size_t line, std::size_t col, const std::string& msg) {
    throw IoError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

double parse_number(std::string_view s, const std::string& origin, std::size_t line, std::size_t col) {
    double v = 0.0;
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
    const char* b = s.data();
    if (!s.empty() && *b == '+') ++b;
    const auto res = std::from_chars(b, s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
        fail_at(origin, line, col, "expected a number, got '" + std::string(s) + "'");
    return v;
}

std::size_t parse_index(std::string_view s, const std::string& origin, std::size_t line, std::size_t col) {
    std::size_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
        fail_at(origin, line, col, "expected a nonnegative integer index, got '" + std::string(s) + "'");
    return v;
}

int level_for_cells(std::size_t cells) {
    int L = 0;
    while ((std::size_t{1} << L) < cells) ++L;
    if ((std::size_t{1} << L) != cells) return -1;
    return L;
}

std::string row_text(std::size_t i, std::size_t j, const double* v, std::size_t m) {
    std::string s = std::to_string(i) + "," + std::to_string(j);
    for (std::size_t c = 0; c < m; ++c) s += "," + format_double(v[c]);
    s += "\n";
    return s;
}

}  // namespace

GridPath parse_path_csv(const std::string& text, const std::string& origin) {
    const auto lines = split_csv(text);
    if (lines.empty()) throw IoError(origin + ": empty path file");
    const Line& head = lines.front();
    if (head.cells.empty() || head.cells[0] != "t") fail_at(origin, head.number, 1, "header must start with 't'");
    const std::size_t m = head.cells.size() - 1;
    if (m == 0) fail_at(origin, head.number, 1, "header needs at least one value column");
    for (std::size_t c = 1; c <= m; ++c)
        if (head.cells[c] != "v" + std::to_string(c - 1))
            fail_at(origin, head.number, c + 1, "expected column 'v" + std::to_string(c - 1) + "'");
    const std::size_t rows = lines.size() - 1;
    const int L = rows >= 2 ? level_for_cells(rows - 1) : -1;
    if (L < 0) throw IoError(origin + ": expected 2^L + 1 data rows, got " + std::to_string(rows));
    std::vector<double> times(rows), values(rows * m);
    for (std::size_t r = 0; r < rows; ++r) {
        const Line& l = lines[r + 1];
        if (l.cells.size() != m + 1)
            fail_at(origin, l.number, 1,
                    "expected " + std::to_string(m + 1) + " columns, got " + std::to_string(l.cells.size()));
        times[r] = parse_number(l.cells[0], origin, l.number, 1);
        for (std::size_t c = 0; c < m; ++c) values[r * m + c] = parse_number(l.cells[c + 1], origin, l.number, c + 2);
        if (r > 0 && !(times[r] > times[r - 1])) fail_at(origin, l.number, 1, "times must be strictly increasing");
    }
    const double T = times.back();
    if (!(T > 0.0) || !std::isfinite(T)) throw IoError(origin + ": final time must be positive and finite");
    const UniformGrid grid(T, L);
    for (std::size_t r = 0; r < rows; ++r)
        if (std::abs(times[r] - grid.time(r)) > 1e-12 * T)
            fail_at(origin, lines[r + 1].number, 1, "time is not on the dyadic grid i T / 2^" + std::to_string(L));
    return GridPath(grid, m, std::move(values));
}

GridPath read_path_csv(const std::string& file) { return parse_path_csv(read_text(file), file); }

std::string path_csv_text(const GridPath& path) {
    std::string s = "t";
    for (std::size_t c = 0; c < path.dim(); ++c) s += ",v" + std::to_string(c);
    s += "\n";
    for (std::size_t i = 0; i < path.size(); ++i) {
        s += format_double(path.grid().time(i));
        for (std::size_t c = 0; c < path.dim(); ++c) s += "," + format_double(path(i, c));
        s += "\n";
    }
    return s;
}

void write_path_csv(const std::string& file, const GridPath& path) { write_text(file, path_csv_text(path)); }

TwoParamField parse_germ_csv(const std::string& text, double horizon, const std::string& origin) {
    auto lines = split_csv(text);
    if (!lines.empty() && !lines.front().cells.empty() && !lines.front().cells[0].empty() &&
        lines.front().cells[0][0] == 'i')
        lines.erase(lines.begin());
    if (lines.empty()) throw IoError(origin + ": empty germ file");
    const std::size_t m = lines.front().cells.size() < 3 ? 0 : lines.front().cells.size() - 2;
    if (m == 0) fail_at(origin, lines.front().number, 1, "germ rows need i, j and at least one value");
    std::size_t jmax = 0;
    for (const auto& l : lines) {
        if (l.cells.size() != m + 2)
            fail_at(origin, l.number, 1,
                    "expected " + std::to_string(m + 2) + " columns, got " + std::to_string(l.cells.size()));
        jmax = std::max(jmax, parse_index(l.cells[1], origin, l.number, 2));
    }
    const int L = level_for_cells(jmax);
    if (L < 0) throw IoError(origin + ": largest index " + std::to_string(jmax) + " is not a power of two");
    const UniformGrid grid(horizon, L);
    TwoParamField A(grid, m);
    const std::size_t n1 = grid.size();
    std::vector<char> seen(n1 * n1, 0);
    std::size_t offdiag = 0;
    for (const auto& l : lines) {
        const std::size_t i = parse_index(l.cells[0], origin, l.number, 1);
        const std::size_t j = parse_index(l.cells[1], origin, l.number, 2);
        if (i > j) fail_at(origin, l.number, 1, "germ rows must satisfy i <= j");
        if (seen[i * n1 + j]) fail_at(origin, l.number, 1, "duplicate pair");
        seen[i * n1 + j] = 1;
        double* e = A.entry(i, j);
        for (std::size_t c = 0; c < m; ++c) e[c] = parse_number(l.cells[c + 2], origin, l.number, c + 3);
        if (i == j) {
            for (std::size_t c = 0; c < m; ++c)
                if (e[c] != 0.0) fail_at(origin, l.number, c + 3, "diagonal germ entries must vanish");
        } else {
            ++offdiag;
        }
    }
    if (offdiag != grid.cells() * (grid.cells() + 1) / 2)
        throw IoError(origin + ": germ must list every pair i < j (" +
                      std::to_string(grid.cells() * (grid.cells() + 1) / 2) + " rows), got " + std::to_string(offdiag));
    return A;
}

TwoParamField read_germ_csv(const std::string& file, double horizon) {
    return parse_germ_csv(read_text(file), horizon, file);
}

void write_germ_csv(const std::string& file, const TwoParamField& A, bool with_diagonal) {
    std::string s = "i,j";
    for (std::size_t c = 0; c < A.dim(); ++c) s += ",v" + std::to_string(c);
    s += "\n";
    std::vector<double> buf(A.dim());
    for (std::size_t i = 0; i < A.grid().size(); ++i)
        for (std::size_t j = with_diagonal ? i : i + 1; j < A.grid().size(); ++j) {
            A.get(i, j, buf.data());
            s += row_text(i, j, buf.data(), A.dim());
        }
    write_text(file, s);
}

json json_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return nullptr;
    return v;
}

double json_to_double(const json& j, const std::string& key) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
    }
    throw IoError("key '" + key + "' must be a number or \"inf\"");
}

void write_json_file(const std::string& file, const json& j) { write_text(file, j.dump(2) + "\n"); }

json read_json_file(const std::string& file) {
    const std::string text = read_text(file);
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(file + ": " + e.what());
    }
}

void write_rough_path(const std::string& dir, const RoughPath& X) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
    const BesovParams& P = X.params();
    json meta{{"n", X.base_dim()},          {"N", X.depth()},           {"level", X.grid().level()},
              {"horizon", X.grid().horizon()}, {"alpha", json_number(P.alpha)}, {"p", json_number(P.p)},
              {"q", json_number(P.q)}};
    write_json_file((fs::path(dir) / "meta.json").string(), meta);
    for (int k = 1; k <= X.depth(); ++k) {
        const TwoParamField& F = X.level(k);
        std::string s;
        std::vector<double> buf(F.dim());
        for (std::size_t i = 0; i < F.grid().size(); ++i)
            for (std::size_t j = i; j < F.grid().size(); ++j) {
                F.get(i, j, buf.data());
                s += row_text(i, j, buf.data(), F.dim());
            }
        write_text((fs::path(dir) / (std::to_string(k) + ".csv")).string(), s);
    }
}

RoughPath read_rough_path(const std::string& dir) {
    namespace fs = std::filesystem;
    const json meta = read_json_file((fs::path(dir) / "meta.json").string());
    for (const char* key : {"n", "N", "level", "alpha", "p", "q"})
        if (!meta.contains(key)) throw IoError(dir + "/meta.json: missing key '" + key + "'");
    const int n = meta["n"].get<int>(), N = meta["N"].get<int>(), L = meta["level"].get<int>();
    const double T = meta.contains("horizon") ? json_to_double(meta["horizon"], "horizon") : 1.0;
    if (n < 1 || n > Tensor::kMaxDim || N < 1 || N > Tensor::kMaxDepth || L < 0 || L > 20)
        throw IoError(dir + "/meta.json: n, N or level out of range");
    const BesovParams P{json_to_double(meta["alpha"], "alpha"), json_to_double(meta["p"], "p"),
                        json_to_double(meta["q"], "q")};
    const UniformGrid grid(T, L);
    std::vector<TwoParamField> levels;
    std::size_t dk = 1;
    for (int k = 1; k <= N; ++k) {
        dk *= static_cast<std::size_t>(n);
        const std::string file = (fs::path(dir) / (std::to_string(k) + ".csv")).string();
        const std::string text = read_text(file);
        const auto lines = split_csv(text);
        TwoParamField F(grid, dk);
        const std::size_t n1 = grid.size();
        if (lines.size() != n1 * (n1 + 1) / 2)
            throw IoError(file + ": expected " + std::to_string(n1 * (n1 + 1) / 2) + " rows, got " +
                          std::to_string(lines.size()));
        std::vector<char> seen(n1 * n1, 0);
        for (const auto& l : lines) {
            if (l.cells.size() != dk + 2) fail_at(file, l.number, 1, "expected " + std::to_string(dk + 2) + " columns");
            const std::size_t i = parse_index(l.cells[0], file, l.number, 1);
            const std::size_t j = parse_index(l.cells[1], file, l.number, 2);
            if (i > j || j >= n1) fail_at(file, l.number, 1, "index pair out of range");
            if (seen[i * n1 + j]) fail_at(file, l.number, 1, "duplicate pair");
            seen[i * n1 + j] = 1;
            double* e = F.entry(i, j);
            for (std::size_t c = 0; c < dk; ++c) e[c] = parse_number(l.cells[c + 2], file, l.number, c + 3);
        }
        levels.push_back(std::move(F));
    }
    return RoughPath(n, N, std::move(levels), P);
}

namespace {

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "subcommand", "experiment", "input", "output", "report", "alpha", "p", "q", "level", "seed", "samples",
        "oracle_samples", "ns", "hurst", "dim", "flavor", "gamma", "p_tuple", "q_tuple", "r_tuple", "lengths",
        "martingale", "same", "tolerances"};
    return keys;
}

template <class T>
void get_opt(const json& j, const char* key, std::optional<T>& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw IoError(std::string("config key '") + key + "' has the wrong type");
    }
}

void get_real(const json& j, const char* key, std::optional<double>& out) {
    if (j.contains(key)) out = json_to_double(j.at(key), key);
}

void get_reals(const json& j, const char* key, std::optional<std::vector<double>>& out) {
    if (!j.contains(key)) return;
    if (!j.at(key).is_array()) throw IoError(std::string("config key '") + key + "' must be an array");
    std::vector<double> v;
    for (const auto& e : j.at(key)) v.push_back(json_to_double(e, key));
    out = std::move(v);
}

json reals(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(json_number(x));
    return a;
}

}  // namespace

json to_json(const ExperimentConfig& c) {
    json j = json::object();
    auto put = [&](const char* key, const auto& opt) {
        if (opt) j[key] = *opt;
    };
    put("subcommand", c.subcommand);
    put("experiment", c.experiment);
    put("input", c.input);
    put("output", c.output);
    put("report", c.report);
    if (c.alpha) j["alpha"] = json_number(*c.alpha);
    if (c.p) j["p"] = json_number(*c.p);
    if (c.q) j["q"] = json_number(*c.q);
    put("level", c.level);
    put("seed", c.seed);
    put("samples", c.samples);
    put("oracle_samples", c.oracle_samples);
    put("ns", c.ns);
    if (c.hurst) j["hurst"] = json_number(*c.hurst);
    put("dim", c.dim);
    put("flavor", c.flavor);
    if (c.gamma) j["gamma"] = reals(*c.gamma);
    if (c.p_tuple) j["p_tuple"] = reals(*c.p_tuple);
    if (c.q_tuple) j["q_tuple"] = reals(*c.q_tuple);
    if (c.r_tuple) j["r_tuple"] = reals(*c.r_tuple);
    put("lengths", c.lengths);
    put("martingale", c.martingale);
    put("same", c.same);
    if (!c.tolerances.empty()) {
        json t = json::object();
        for (const auto& [k, v] : c.tolerances) t[k] = json_number(v);
        j["tolerances"] = t;
    }
    return j;
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object()) throw IoError("config must be a JSON object");
    const auto& keys = config_keys();
    for (const auto& [k, v] : j.items())
        if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw IoError("unknown config key '" + k + "'");
    ExperimentConfig c;
    get_opt(j, "subcommand", c.subcommand);
    get_opt(j, "experiment", c.experiment);
    get_opt(j, "input", c.input);
    get_opt(j, "output", c.output);
    get_opt(j, "report", c.report);
    get_real(j, "alpha", c.alpha);
    get_real(j, "p", c.p);
    get_real(j, "q", c.q);
    get_opt(j, "level", c.level);
    get_opt(j, "seed", c.seed);
    get_opt(j, "samples", c.samples);
    get_opt(j, "oracle_samples", c.oracle_samples);
    get_opt(j, "ns", c.ns);
    get_real(j, "hurst", c.hurst);
    get_opt(j, "dim", c.dim);
    get_opt(j, "flavor", c.flavor);
    get_reals(j, "gamma", c.gamma);
    get_reals(j, "p_tuple", c.p_tuple);
    get_reals(j, "q_tuple", c.q_tuple);
    get_reals(j, "r_tuple", c.r_tuple);
    get_opt(j, "lengths", c.lengths);
    get_opt(j, "martingale", c.martingale);
    get_opt(j, "same", c.same);
    if (j.contains("tolerances")) {
        if (!j["tolerances"].is_object()) throw IoError("config key 'tolerances' must be an object");
        for (const auto& [k, v] : j["tolerances"].items()) c.tolerances[k] = json_to_double(v, "tolerances." + k);
    }
    return c;
}

}  // namespace besov_rough
