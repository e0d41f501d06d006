#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "besov_rough/errors.hpp"
#include "besov_rough/io.hpp"
#include "besov_rough/signals.hpp"

namespace br = besov_rough;

namespace {

std::string expect_io_error(const std::string& text) {
    try {
        br::parse_path_csv(text, "in.csv");
    } catch (const br::IoError& e) {
        return e.what();
    }
    ADD_FAILURE() << "no IoError for:\n" << text;
    return {};
}

std::filesystem::path temp_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("besov_rough_test_" + name);
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace

TEST(FormatDouble, RoundTrip) {
    for (double v : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.0}) EXPECT_EQ(std::stod(br::format_double(v)), v);
    EXPECT_EQ(br::format_double(br::kInf), "inf");
    EXPECT_EQ(br::format_double(-br::kInf), "-inf");
    EXPECT_EQ(br::format_double(std::nan("")), "nan");
}

TEST(PathCsv, RoundTrip) {
    const auto f = br::random_piecewise_linear(br::UniformGrid(2.0, 5), 3, 7, 1);
    const auto g = br::parse_path_csv(br::path_csv_text(f));
    EXPECT_EQ(g.grid(), f.grid());
    EXPECT_EQ(g.values(), f.values());
}

TEST(PathCsv, ErrorsCarryPosition) {
    EXPECT_NE(expect_io_error("t,v0\n0,1\n0.5,abc\n1,2\n").find("in.csv:3:2"), std::string::npos);
    EXPECT_NE(expect_io_error("x,v0\n0,1\n1,2\n").find("in.csv:1"), std::string::npos);
    expect_io_error("t,v0\n0,1\n0.4,2\n1,3\n");        // not dyadic
    expect_io_error("t,v0\n0,1\n0.5,2\n0.75,3\n1,4\n");  // row count is not 2^L + 1
    expect_io_error("t,v0\n0,1\n0.5,2,7\n1,3\n");      // column count
    expect_io_error("t,v0\n0,1\n0.5,2\n0.6,3\n");       // uneven spacing
    expect_io_error("");
}

TEST(GermCsv, RoundTripAndCompleteness) {
    const auto f = br::random_piecewise_linear(br::UniformGrid(1.0, 3), 1, 4, 2);
    const auto A = br::delta(f, br::TwoParamField::Mode::eager);
    const auto dir = temp_dir("germ");
    std::filesystem::create_directories(dir);
    const std::string file = (dir / "g.csv").string();
    br::write_germ_csv(file, A);
    const auto B = br::read_germ_csv(file);
    for (std::size_t i = 0; i < 9; ++i)
        for (std::size_t j = i; j < 9; ++j) EXPECT_EQ(A.value(i, j), B.value(i, j));
    EXPECT_THROW(br::parse_germ_csv("0,1,0.5\n0,2,0.7\n"), br::IoError);  // missing (1, 2)
    EXPECT_THROW(br::parse_germ_csv("0,0,1\n0,1,0.5\n"), br::IoError);    // nonzero diagonal
}

TEST(RoughPathDir, RoundTrip) {
    const auto x = br::random_piecewise_linear(br::UniformGrid(1.0, 4), 2, 5, 3);
    const auto X = br::canonical_lift(x, 3, br::LiftFlavor::stratonovich, {0.4, 6.0, br::kInf});
    const auto dir = temp_dir("rp").string();
    br::write_rough_path(dir, X);
    const auto Y = br::read_rough_path(dir);
    EXPECT_EQ(Y.depth(), 3);
    EXPECT_EQ(Y.params().p, 6.0);
    EXPECT_TRUE(std::isinf(Y.params().q));
    for (int k = 1; k <= 3; ++k) EXPECT_EQ(Y.level(k).at(3, 11), X.level(k).at(3, 11));
}

TEST(ExperimentConfig, JsonRoundTripIsLossless) {
    br::ExperimentConfig c;
    c.subcommand = "mc";
    c.experiment = "pprod-bdg";
    c.alpha = 0.45;
    c.q = br::kInf;
    c.seed = 18446744073709551557ull;
    c.ns = std::vector<int>{4, 6};
    c.gamma = std::vector<double>{0.45, 0.6};
    c.lengths = std::vector<std::size_t>{128, 256};
    c.same = true;
    c.tolerances["bm-statistic.se"] = 3.0;
    const auto j = br::to_json(c);
    EXPECT_EQ(br::config_from_json(j), c);
    EXPECT_EQ(br::config_from_json(nlohmann::json::parse(j.dump())), c);
    EXPECT_FALSE(j.contains("hurst"));
}

TEST(ExperimentConfig, RejectsUnknownKeysAndWrongTypes) {
    EXPECT_THROW(br::config_from_json(nlohmann::json::parse(R"({"sede": 1})")), br::IoError);
    EXPECT_THROW(br::config_from_json(nlohmann::json::parse(R"({"samples": "many"})")), br::IoError);
    EXPECT_THROW(br::config_from_json(nlohmann::json::parse(R"([1, 2])")), br::IoError);
}
