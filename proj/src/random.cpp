#include "terraced/random.hpp"

#include <cmath>
#include <numbers>

namespace terraced {

complex SplitMix64::complex_gaussian()
{
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log1p(-u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
}

SequenceSpec random_finite_sequence(SplitMix64& rng, std::size_t min_len, std::size_t max_len)
{
    const std::size_t n = min_len + rng.next() % (max_len - min_len + 1);
    std::vector<complex> v(n);
    for (auto& z : v) z = rng.complex_gaussian();
    return SequenceSpec::finite(std::move(v));
}

std::vector<SequenceSpec> random_corpus(std::uint64_t seed, std::size_t count)
{
    SplitMix64 rng(seed);
    std::vector<SequenceSpec> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_finite_sequence(rng));
    return out;
}

} // namespace terraced
