#ifndef GCF_RNG_HPP
#define GCF_RNG_HPP

#include <cstdint>
#include <random>

namespace gcf {

// Portable random streams.
//
// Every stream is a std::mt19937_64 (whose output sequence is fixed by the
// standard) seeded with derive_seed(seed, stream). Uniform reals are built
// from the top 53 bits, so no implementation-defined distribution is
// involved. Datasets are therefore identical across platforms.

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ (0x9E3779B97F4A7C15ull * (stream + 1)));
}

class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream) : gen_(derive_seed(seed, stream)) {}

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 gen_;
};

}  // namespace gcf

#endif  // GCF_RNG_HPP
