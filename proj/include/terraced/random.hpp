#pragma once

#include <cstdint>
#include <vector>

#include "terraced/sequences.hpp"

namespace terraced {

/// splitmix64 (Steele, Lea, Flood). Fixed algorithm so the verification
/// corpus is reproducible across implementations:
///   state += 0x9e3779b97f4a7c15
///   z = state; z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9
///   z = (z ^ (z >> 27)) * 0x94d049bb133111eb;  return z ^ (z >> 31)
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// (next() >> 11) * 2^-53, in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard complex Gaussian (E|z|^2 = 1) by Box-Muller on two uniforms:
    ///   r = sqrt(-ln(1 - u1)), theta = 2 pi u2, z = r (cos theta + i sin theta).
    complex complex_gaussian();

private:
    std::uint64_t state_;
};

/// Corpus element: length 2 + next() % 63, then that many complex Gaussians.
SequenceSpec random_finite_sequence(SplitMix64& rng, std::size_t min_len = 2, std::size_t max_len = 64);

std::vector<SequenceSpec> random_corpus(std::uint64_t seed, std::size_t count);

} // namespace terraced
