#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace besov_rough {

std::uint64_t splitmix64(std::uint64_t x);

/// Seed of the named stream `stream` derived from a root seed.
std::uint64_t stream_seed(std::uint64_t root, std::string_view stream);

/// Seed for sample `index` of a stream; a pure function of its arguments.
std::uint64_t sample_seed(std::uint64_t stream, std::uint64_t index);

/// std::mt19937_64 with a Box-Muller normal sampler; std::normal_distribution is not portable across libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    double normal();
    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n);

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace besov_rough
