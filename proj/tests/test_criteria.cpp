#include "doctest.h"

#include <cmath>
#include <numbers>

#include "terraced/criteria.hpp"
#include "terraced/operator.hpp"
#include "terraced/spectral.hpp"
#include "test_support.hpp"

using namespace terraced;

namespace {
const double r2 = std::numbers::sqrt2;
const double zeta2_sqrt = std::sqrt(std::numbers::pi * std::numbers::pi / 6.0);
}

TEST_CASE("sigma profile of the Cesaro sequence")
{
    const auto p = sigma_profile(SequenceSpec::cesaro());
    CHECK(p.sigma_at(-1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.sigma_at(0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(p.sigma_at(1) == doctest::Approx(std::sqrt(7.0 / 12.0)).epsilon(1e-14));
    CHECK(std::abs(p.sigma_at(20) - std::sqrt(std::log(2.0))) < 1e-2);
}

TEST_CASE("block energies bracket sigma squared")
{
    test::Rng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const auto spec = test::random_finite(rng, 64);
        const auto p = sigma_profile(spec, 8);
        for (std::size_t k = 0; k <= p.k_max; ++k) {
            const double s2 = p.sigma_at(int(k)) * p.sigma_at(int(k));
            const double lo = std::ldexp(p.block_energy[k], int(k)), hi = std::ldexp(p.block_energy[k], int(k) + 1);
            CHECK(lo <= s2 * (1 + 1e-14) + 1e-300);
            CHECK(s2 <= hi * (1 + 1e-14) + 1e-300);
        }
        for (double s : p.sigma) CHECK(s >= 0.0);
    }
    for (const auto& spec : {SequenceSpec::cesaro(), SequenceSpec::power(0.4), SequenceSpec::log_power(1.0, 2.0)}) {
        const auto p = sigma_profile(spec);
        for (std::size_t k = 0; k <= p.k_max; ++k) {
            const double s2 = p.sigma_at(int(k)) * p.sigma_at(int(k));
            CHECK(std::ldexp(p.block_energy[k], int(k)) <= s2 * (1 + 1e-12));
            CHECK(s2 <= std::ldexp(p.block_energy[k], int(k) + 1) * (1 + 1e-12));
        }
    }
}

TEST_CASE("J_n examples")
{
    const auto e0 = J_n_bracket(SequenceSpec::finite({1.0}), 0);
    CHECK(e0.exact);
    CHECK(e0.value.lo == 1.0);
    CHECK(e0.value.hi == 1.0);
    CHECK(e0.argmax_m == 0);

    const auto two = J_n_bracket(SequenceSpec::finite({1.0, 1.0}), 0);
    CHECK(two.exact);
    CHECK(two.value.lo == doctest::Approx(r2).epsilon(1e-15));
    CHECK(two.value.hi == doctest::Approx(r2).epsilon(1e-15));
    CHECK(two.argmax_m == 1);

    const auto ces = J_n_bracket(SequenceSpec::cesaro(), 0);
    CHECK(ces.value.contains(zeta2_sqrt));
    CHECK(ces.value.width() < 1e-4);
    CHECK(ces.argmax_m == 0);
}

TEST_CASE("J_n is nonincreasing on brackets")
{
    const std::vector<std::size_t> ns{0, 1, 2, 4, 8, 16, 64, 256, 1024};
    for (const auto& spec : {SequenceSpec::cesaro(), SequenceSpec::power(1.5), SequenceSpec::log_power(1.0, 1.0)}) {
        const auto r = J_n_brackets(spec, ns);
        for (std::size_t i = 1; i < r.size(); ++i) CHECK(r[i].value.lo <= r[i - 1].value.hi + 1e-12);
    }
    test::Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto spec = test::random_finite(rng, 40);
        for (std::size_t n = 1; n < 40; ++n)
            CHECK(J_n_bracket(spec, n).value.lo <= J_n_bracket(spec, n - 1).value.hi + 1e-12);
    }
}

TEST_CASE("unbounded family gives an infinite J bracket")
{
    const auto r = J_n_bracket(SequenceSpec::power(0.4), 0);
    CHECK(std::isinf(r.value.hi));
}

TEST_CASE("factorable constant K2")
{
    const auto ones = SequenceSpec::power(0.0);
    const auto e0 = SequenceSpec::finite({1.0});
    const auto k = bennett_K2(e0, ones);
    CHECK(k.value.lo == 1.0);
    CHECK(k.value.hi == 1.0);

    const auto ces = SequenceSpec::cesaro();
    const auto kc = bennett_K2(ces, ones).value, jc = J_n_bracket(ces, 0).value;
    CHECK(kc.lo == doctest::Approx(jc.lo).epsilon(1e-14));
    CHECK(kc.hi == doctest::Approx(jc.hi).epsilon(1e-14));

    test::Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const auto a = test::random_finite(rng, 32), b = test::random_finite(rng, 32);
        const std::size_t N = std::max(*a.support_end(), *b.support_end());
        const double norm = largest_singular_value(truncate_factorable(a, b, N));
        const auto K2 = bennett_K2(a, b).value;
        CHECK(K2.exact());
        CHECK(K2.lo <= norm * (1 + 1e-9));
        CHECK(norm <= 2 * r2 * K2.hi * (1 + 1e-9));
    }
}

TEST_CASE("norm brackets")
{
    const auto e0 = norm_bracket(SequenceSpec::finite({1.0}));
    CHECK(e0.norm.lo == doctest::Approx(1.0));
    CHECK(e0.bounded == Verdict::yes);

    NormOptions fast;
    fast.truncation_schedule = {64, 256};
    const auto ces = norm_bracket(SequenceSpec::cesaro(), fast);
    CHECK(ces.bounded == Verdict::yes);
    CHECK(ces.norm.contains(2.0));
    CHECK(ces.norm.lo >= 1.2825);
    CHECK(ces.norm.hi <= 2 * r2 * 1.28256);

    const auto wild = norm_bracket(SequenceSpec::power(0.4), fast);
    CHECK(wild.bounded == Verdict::no);
}

TEST_CASE("norm sandwiches on finite supports")
{
    test::Rng rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        const auto spec = test::random_finite(rng, 48);
        const double smax = largest_singular_value(truncate_rhaly(spec, *spec.support_end()).matrix);
        const double J0 = J_n_bracket(spec, 0).value.lo;
        const double sup = sigma_profile(spec).sup();
        CHECK(J0 <= smax * (1 + 1e-9));
        CHECK(smax <= 2 * r2 * J0 * (1 + 1e-9));
        CHECK(sup / r2 <= smax * (1 + 1e-9));
        CHECK(smax <= 4 * r2 * sup * (1 + 1e-9));
        const auto nb = norm_bracket(spec);
        CHECK(nb.norm.contains(smax, 1e-9 * smax));
    }
}

TEST_CASE("norm bracket scales linearly")
{
    test::Rng rng(23);
    const auto base = test::random_finite(rng, 20);
    std::vector<complex> v;
    for (std::size_t k = 0; k < *base.support_end(); ++k) v.push_back(3.5 * base(k));
    const auto a = norm_bracket(base).norm, b = norm_bracket(SequenceSpec::finite(v)).norm;
    CHECK(b.lo == doctest::Approx(3.5 * a.lo).epsilon(1e-12));
    CHECK(b.hi == doctest::Approx(3.5 * a.hi).epsilon(1e-12));

    NormOptions fast;
    fast.truncation_schedule = {64};
    const auto c1 = norm_bracket(SequenceSpec::power(1.5), fast).norm;
    const auto c2 = norm_bracket(SequenceSpec::power(1.5, 2.0), fast).norm;
    CHECK(c2.lo == doctest::Approx(2 * c1.lo).epsilon(1e-9));
    CHECK(c2.hi == doctest::Approx(2 * c1.hi).epsilon(1e-9));
}

TEST_CASE("essential norm and compactness")
{
    const auto fin = essential_norm_bracket(SequenceSpec::finite({1.0, 2.0, -1.0}));
    CHECK(fin.essential_norm.lo == 0.0);
    CHECK(fin.essential_norm.hi == 0.0);
    CHECK(fin.compact == Verdict::yes);

    NormOptions fast;
    fast.truncation_schedule = {64};
    const auto ces = essential_norm_bracket(SequenceSpec::cesaro(), fast);
    CHECK(ces.compact == Verdict::no);
    CHECK(ces.essential_norm.lo >= 1.0 - 1e-12);
    CHECK(ces.essential_norm.hi <= norm_bracket(SequenceSpec::cesaro(), fast).norm.hi);

    CHECK(essential_norm_bracket(SequenceSpec::power(1.5), fast).compact == Verdict::yes);
    CHECK(essential_norm_bracket(SequenceSpec::log_power(1.0, 0.5), fast).compact == Verdict::yes);
}

TEST_CASE("Schatten test")
{
    test::Rng rng(29);
    const auto spec = test::random_finite(rng, 30);
    const auto p = sigma_profile(spec);
    for (double q : {1.5, 2.0, 3.0}) {
        const auto r = schatten_test(spec, q);
        CHECK(r.verdict == Verdict::yes);
        double s = 0.0;
        for (double x : p.sigma) s += std::pow(x, q);
        CHECK(r.sum.contains(s, 1e-12 * s));
    }
    CHECK(schatten_test(SequenceSpec::cesaro(), 2.0).verdict == Verdict::no);
    CHECK(schatten_test(SequenceSpec::power(1.5), 2.0).verdict == Verdict::yes);
    CHECK(std::isfinite(schatten_test(SequenceSpec::power(1.5), 2.0).sum.hi));
    CHECK_THROWS_AS(schatten_test(SequenceSpec::cesaro(), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(schatten_test(SequenceSpec::cesaro(), kInf), std::invalid_argument);
}

TEST_CASE("custom closed form without envelopes stays undetermined")
{
    const auto spec = SequenceSpec::custom("inv", [](std::size_t k) { return complex(1.0 / (k + 1.0)); });
    NormOptions fast;
    fast.truncation_schedule = {64};
    const auto r = criteria_report(spec, std::vector<double>{2.0}, fast);
    CHECK(r.norm.bounded == Verdict::undetermined);
    CHECK(r.essential.compact == Verdict::undetermined);
    CHECK(r.schatten.at(2.0).verdict == Verdict::undetermined);
}
