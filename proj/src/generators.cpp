#include "mergelab/generators.hpp"

#include <bit>
#include <random>
#include <sstream>

namespace mergelab {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// Unbiased draw from [lo, hi] via mask rejection; consumes a
/// deterministic, platform-independent number of engine words.
std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
    if (lo == hi) return lo;
    std::uint64_t range = hi - lo + 1;  // hi > lo, so no wrap unless the full domain
    if (range == 0) return rng();       // [0, 2^64-1]
    std::uint64_t mask = range <= 1 ? 0 : (std::bit_ceil(range) - 1);
    for (;;) {
        std::uint64_t x = rng() & mask;
        if (x < range) return lo + x;
    }
}

double unit_real(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::string range_str(const UniformRange& r) {
    return "uniform(" + std::to_string(r.lo) + "," + std::to_string(r.hi) + ")";
}

}  // namespace

DistributionSpec DistributionSpec::uniform(std::uint64_t lo, std::uint64_t hi, std::uint64_t seed) {
    DistributionSpec spec;
    spec.kind = Kind::Uniform;
    spec.first = {lo, hi};
    spec.seed = seed;
    spec.validate();
    return spec;
}

DistributionSpec DistributionSpec::mixture(double first_weight, UniformRange first,
                                           UniformRange second, std::uint64_t seed) {
    DistributionSpec spec;
    spec.kind = Kind::Mixture;
    spec.first = first;
    spec.second = second;
    spec.first_weight = first_weight;
    spec.seed = seed;
    spec.validate();
    return spec;
}

DistributionSpec DistributionSpec::standard_mixture(std::uint64_t seed) {
    return mixture(0.95, {1, 100}, {10000, 100000}, seed);
}

DistributionSpec DistributionSpec::with_seed(std::uint64_t s) const {
    DistributionSpec copy = *this;
    copy.seed = s;
    return copy;
}

std::string DistributionSpec::describe() const {
    if (kind == Kind::Uniform) return range_str(first);
    std::ostringstream os;
    os << "mixture(" << first_weight << "*" << range_str(first) << "+" << (1.0 - first_weight)
       << "*" << range_str(second) << ")";
    return os.str();
}

void DistributionSpec::validate() const {
    auto check_range = [](const UniformRange& r) {
        if (r.lo == 0 || r.lo > r.hi) {
            throw std::invalid_argument("uniform range needs 1 <= lo <= hi");
        }
    };
    check_range(first);
    if (kind == Kind::Mixture) {
        check_range(second);
        if (!(first_weight >= 0.0 && first_weight <= 1.0)) {
            throw std::invalid_argument("mixture weight must lie in [0, 1]");
        }
    }
}

RunLengths generate(const DistributionSpec& spec, std::size_t m) {
    spec.validate();
    if (m == 0) throw std::invalid_argument("generate requires m >= 1");
    std::mt19937_64 rng(spec.seed);
    std::vector<std::uint64_t> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const UniformRange* range = &spec.first;
        if (spec.kind == DistributionSpec::Kind::Mixture && unit_real(rng) >= spec.first_weight) {
            range = &spec.second;
        }
        out.push_back(bounded_uniform(rng, range->lo, range->hi));
    }
    return RunLengths(std::move(out));
}

std::uint64_t splitmix64(std::uint64_t state) {
    std::uint64_t z = state;
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

std::vector<std::uint64_t> trial_seeds(std::uint64_t master_seed, std::size_t trial_count) {
    if (trial_count == 0) throw std::invalid_argument("trial_seeds requires trial_count >= 1");
    std::vector<std::uint64_t> seeds;
    seeds.reserve(trial_count);
    std::uint64_t state = master_seed;
    for (std::size_t i = 0; i < trial_count; ++i) {
        state += kGolden;
        seeds.push_back(splitmix64(state));
    }
    return seeds;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return splitmix64(a + kGolden * (b + 1));
}

}  // namespace mergelab
