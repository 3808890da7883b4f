#ifndef REHAZE_RANDOM_HPP
#define REHAZE_RANDOM_HPP

#include <cstdint>
#include <random>
#include <string_view>

namespace rehaze {

/// Seeded source for every random draw in the toolkit. Single consumer.
///
/// Uniform reals are built from the top 53 bits of a 64-bit Mersenne twister
/// word, so a seed reproduces the same doubles with any standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi); returns lo when the interval is degenerate.
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t fnv1a(std::string_view text);

/// Independent per-item seed: a function of the run seed, an item key and an
/// index, never of processing order.
std::uint64_t derive_seed(std::uint64_t run_seed, std::string_view key, std::uint64_t index);

}  // namespace rehaze

#endif  // REHAZE_RANDOM_HPP
