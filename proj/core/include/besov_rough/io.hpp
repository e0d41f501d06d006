#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "besov_rough/grid.hpp"
#include "besov_rough/norms.hpp"
#include "besov_rough/rough.hpp"

namespace besov_rough {

/// Shortest round-trip decimal form ("inf", "-inf", "nan" for non-finite values).
std::string format_double(double v);

/// CSV with header t,v0,...,v{m-1}; one row per node of a dyadic grid starting at 0.
/// Throws IoError with line/column information on malformed input.
GridPath read_path_csv(const std::string& file);
GridPath parse_path_csv(const std::string& text, const std::string& origin = "<input>");
void write_path_csv(const std::string& file, const GridPath& path);
std::string path_csv_text(const GridPath& path);

/// Rows i,j,v0,... for every pair 0 <= i < j <= 2^L (diagonal rows optional and must be zero-valued if given).
/// An optional header line beginning with "i" is skipped.
TwoParamField read_germ_csv(const std::string& file, double horizon = 1.0);
TwoParamField parse_germ_csv(const std::string& text, double horizon = 1.0, const std::string& origin = "<input>");
void write_germ_csv(const std::string& file, const TwoParamField& A, bool with_diagonal = false);

/// Directory with meta.json {n, N, level, horizon, alpha, p, q} and k.csv rows i,j,c0..c{n^k-1} for every i <= j.
void write_rough_path(const std::string& dir, const RoughPath& X);
RoughPath read_rough_path(const std::string& dir);

/// Infinite values are written as the string "inf".
nlohmann::json json_number(double v);
double json_to_double(const nlohmann::json& j, const std::string& key);

void write_json_file(const std::string& file, const nlohmann::json& j);
nlohmann::json read_json_file(const std::string& file);

/// Run configuration shared by all subcommands; absent keys stay absent on re-encoding.
struct ExperimentConfig {
    std::optional<std::string> subcommand;
    std::optional<std::string> experiment;
    std::optional<std::string> input;
    std::optional<std::string> output;
    std::optional<std::string> report;
    std::optional<double> alpha, p, q;
    std::optional<int> level;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> oracle_samples;
    std::optional<std::vector<int>> ns;
    std::optional<double> hurst;
    std::optional<int> dim;
    std::optional<std::string> flavor;
    std::optional<std::vector<double>> gamma;    // {gamma0, gamma1}
    std::optional<std::vector<double>> p_tuple;  // {p0, p1} or {p, p0, p1}
    std::optional<std::vector<double>> q_tuple;
    std::optional<std::vector<double>> r_tuple;
    std::optional<std::vector<std::size_t>> lengths;
    std::optional<std::string> martingale;
    std::optional<bool> same;
    std::map<std::string, double> tolerances;

    bool operator==(const ExperimentConfig&) const = default;
};

nlohmann::json to_json(const ExperimentConfig& c);
/// Throws IoError on unknown keys or wrongly typed values.
ExperimentConfig config_from_json(const nlohmann::json& j);

}  // namespace besov_rough
