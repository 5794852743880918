#include "doctest.h"

#include <cmath>
#include <numbers>

#include "terraced/criteria.hpp"
#include "terraced/eps_l.hpp"
#include "terraced/interval.hpp"
#include "terraced/spectral.hpp"
#include "test_support.hpp"

using namespace terraced;

namespace {
const double r2 = std::numbers::sqrt2;
}

TEST_CASE("(eps, L)-sequence examples")
{
    const auto a = build_eps_l(SequenceSpec::finite({1.0}), 0.5);
    CHECK(a.c == std::vector<std::size_t>{0});
    CHECK(a.status_string() == "finite(0)");

    const auto two = SequenceSpec::finite({1.0, 1.0});
    const auto b = build_eps_l(two, 0.5);
    CHECK(b.c == std::vector<std::size_t>{0, 2});
    CHECK(b.status_string() == "finite(1)");

    const auto c = build_eps_l(two, 1.5);
    CHECK(c.c == std::vector<std::size_t>{0});
    CHECK(c.status == EpsLStatus::finite);

    CHECK_THROWS_AS(build_eps_l(two, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_eps_l(two, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_eps_l(two, 1.0, 1), std::invalid_argument);
}

TEST_CASE("approximation number bounds")
{
    const auto b = build_eps_l(SequenceSpec::finite({1.0, 1.0}), 0.5);
    const auto bounds = approx_number_bounds(b);
    bool up = false, low = false;
    for (const auto& x : bounds) {
        CHECK(x.value == doctest::Approx(0.5 / r2));
        if (x.kind == ApproxBound::upper) {
            CHECK(x.index == 4);
            up = true;
        } else {
            CHECK(x.index == 1);
            low = true;
        }
    }
    CHECK(up);
    CHECK(low);

    for (double eps : {0.1, 1.0, 7.0}) {
        const auto e0 = approx_number_bounds(build_eps_l(SequenceSpec::finite({1.0}), eps));
        REQUIRE(e0.size() == 1);
        CHECK(e0[0].index == 2);
        CHECK(e0[0].kind == ApproxBound::upper);
    }
}

TEST_CASE("construction invariants and spectral consistency")
{
    test::Rng rng(61);
    for (int trial = 0; trial < 25; ++trial) {
        const auto spec = test::random_finite(rng, 40);
        const auto sv = singular_values(truncate_rhaly(spec, *spec.support_end()).matrix);
        const auto a = [&](std::size_t n) { return n <= sv.size() ? sv[n - 1] : 0.0; };
        std::size_t prev = static_cast<std::size_t>(-1);
        for (int g = 1; g <= 16; ++g) {
            const double eps = r2 * sv[0] * g / 16.0;
            const auto seq = build_eps_l(spec, eps);
            CHECK(seq.status == EpsLStatus::finite);
            CHECK(seq.c.front() == 0);
            for (std::size_t k = 0; k + 1 < seq.c.size(); ++k) {
                CHECK(seq.c[k + 1] >= seq.c[k] + 2);
                CHECK(L_value(spec, {seq.c[k], seq.c[k + 1] - 2}) <= eps + 1e-12);
                CHECK(L_value(spec, {seq.c[k], seq.c[k + 1] - 1}) > eps - 1e-12);
            }
            for (const auto& b : approx_number_bounds(seq)) {
                if (b.kind == ApproxBound::upper)
                    CHECK(a(b.index) <= b.value * (1 + 1e-9) + 1e-12);
                else
                    CHECK(b.value <= a(b.index) * (1 + 1e-9));
            }
            CHECK(seq.length() <= prev);
            prev = seq.length();
        }
    }
}

TEST_CASE("Cesaro sequences against truncation singular values")
{
    const auto ces = SequenceSpec::cesaro();
    const auto sv = approx_numbers(ces, 64, std::vector<std::size_t>{2048}).singular_values[0];
    for (double eps : {1.6, 1.2, 0.8}) {
        const auto seq = build_eps_l(ces, eps, 1024);
        CHECK(seq.status != EpsLStatus::finite);
        for (const auto& b : approx_number_bounds(seq)) {
            REQUIRE(b.kind == ApproxBound::lower);
            CHECK(b.value <= sv[b.index - 1] * (1 + 1e-9));
        }
    }
}

TEST_CASE("compact families end with a tail certificate")
{
    // certificate 2 sqrt2 J_{c_N} <= eps; in between the scan stops at the cap
    const auto spec = SequenceSpec::power(1.5);
    CHECK(build_eps_l(spec, 3.2).status_string() == "finite(0)");
    const auto seq = build_eps_l(spec, 0.2);
    CHECK(seq.status == EpsLStatus::finite);
    CHECK(seq.length() >= 1);
    CHECK(build_eps_l(spec, 0.9, 256).status_string() == "undetermined(cap_hit)");
}

TEST_CASE("script L limit")
{
    const std::vector<std::size_t> grid{0, 16, 256};
    const auto fin = script_L_limit(SequenceSpec::finite({1.0, -2.0, 0.5}), grid, 512);
    CHECK(fin.value.lo == 0.0);
    CHECK(fin.value.hi == 0.0);

    const auto ces = script_L_limit(SequenceSpec::cesaro(), grid, 2048);
    NormOptions fast;
    fast.truncation_schedule = {64};
    const auto ess = essential_norm_bracket(SequenceSpec::cesaro(), fast).essential_norm;
    CHECK(ces.value.lo >= r2 * (1 - 1e-9));
    CHECK(ces.value.lo <= r2 * ess.hi);
    CHECK(r2 * ess.lo <= ces.value.hi);
    for (const auto& [n, v] : ces.samples) CHECK(v <= ces.value.hi);

    const auto wild = script_L_limit(SequenceSpec::power(0.4), grid, 512);
    CHECK(std::isinf(wild.value.hi));
}
