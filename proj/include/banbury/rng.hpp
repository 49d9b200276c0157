#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace banbury {

/// Deterministic 64-bit generator (splitmix64 core). The standard <random>
/// distributions are implementation-defined, so everything that must be
/// reproducible across toolchains samples through this class instead.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();

    /// Uniform integer in [0, n), n >= 1.
    std::uint32_t below(std::uint32_t n);

    /// Uniform double in [0, 1).
    double unit();

    /// Index sampled from a discrete distribution given as unnormalized weights.
    int discrete(const std::vector<double>& weights);

private:
    std::uint64_t state_;
};

/// Derives independent named substreams from one root seed, so every pipeline
/// stage can be re-run in isolation with the same randomness.
class SeedSplitter {
public:
    explicit SeedSplitter(std::uint64_t root) : root_(root) {}

    std::uint64_t derive(std::string_view stream_name) const;
    Rng stream(std::string_view stream_name) const { return Rng(derive(stream_name)); }

    std::uint64_t root() const { return root_; }

private:
    std::uint64_t root_;
};

} // namespace banbury
