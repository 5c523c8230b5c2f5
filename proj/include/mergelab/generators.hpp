#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mergelab/engine.hpp"

namespace mergelab {

/// Identifier recorded in experiment output. Draws come from a
/// std::mt19937_64 stream; bounded values use power-of-two mask
/// rejection, so the byte stream is identical on every platform.
inline constexpr const char* kPrngId = "mt19937_64/mask-rejection+splitmix64";

struct UniformRange {
    std::uint64_t lo = 1;
    std::uint64_t hi = 1;

    friend bool operator==(const UniformRange&, const UniformRange&) = default;
};

/// Run-length distribution: either a single inclusive uniform range, or a
/// two-component mixture choosing the first range with probability
/// `first_weight` on each independent draw.
struct DistributionSpec {
    enum class Kind : std::uint8_t { Uniform, Mixture };

    Kind kind = Kind::Uniform;
    UniformRange first{1, 100};
    UniformRange second{1, 1};
    double first_weight = 1.0;
    std::uint64_t seed = 0;

    static DistributionSpec uniform(std::uint64_t lo, std::uint64_t hi, std::uint64_t seed = 0);
    static DistributionSpec mixture(double first_weight, UniformRange first, UniformRange second,
                                    std::uint64_t seed = 0);
    /// 0.95 uniform(1,100) + 0.05 uniform(10000,100000).
    static DistributionSpec standard_mixture(std::uint64_t seed = 0);

    DistributionSpec with_seed(std::uint64_t s) const;
    std::string describe() const;
    void validate() const;
};

/// m independent draws; deterministic in (spec, m).
RunLengths generate(const DistributionSpec& spec, std::size_t m);

/// splitmix64 output mixing function (a bijection on 64-bit words).
std::uint64_t splitmix64(std::uint64_t state);

/// Pairwise-distinct deterministic sub-seeds for independent trials.
std::vector<std::uint64_t> trial_seeds(std::uint64_t master_seed, std::size_t trial_count);

/// Deterministic combiner for deriving per-grid-point sub-streams.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

}  // namespace mergelab
