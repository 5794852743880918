#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>

#include "terraced/sequences.hpp"

using namespace terraced;

TEST_CASE("eval: built-in families")
{
    const auto c = SequenceSpec::cesaro();
    CHECK(c(0) == complex(1.0));
    CHECK(c(3) == complex(0.25));

    CHECK(eval(moments_spec({{1.0, 0.5}}), 2) == complex(0.25));
    CHECK(std::abs(eval(moments_spec({{0.5, 0.5}, {0.5, 0.25}}), 1) - 0.375) < 1e-15);

    const auto one = moments_spec({{1.0, 1.0}});
    for (std::size_t k : {0u, 1u, 17u, 1000u}) CHECK(one(k) == complex(1.0));

    const auto e0 = moments_spec({{1.0, 0.0}});
    CHECK(e0(0) == complex(1.0));
    CHECK(e0(1) == complex(0.0));
    CHECK(e0(5) == complex(0.0));

    const auto fin = SequenceSpec::finite({1.0, 2.0});
    CHECK(fin(1) == complex(2.0));
    CHECK(fin(2) == complex(0.0));
    CHECK(fin(99) == complex(0.0));

    const auto alt = SequenceSpec::power(0.0, 1.0, true);
    CHECK(alt(0) == complex(1.0));
    CHECK(alt(1) == complex(-1.0));
}

TEST_CASE("moments: nodes outside [0,1] are rejected")
{
    CHECK_THROWS_AS(moments_spec({{1.0, 1.5}}), std::invalid_argument);
    CHECK_THROWS_AS(moments_spec({{1.0, -0.1}}), std::invalid_argument);
}

TEST_CASE("tail_energy: finite support is exact")
{
    const auto s = SequenceSpec::finite({1.0, 1.0});
    auto b = tail_energy(s, 1);
    CHECK(b.lo == 1.0);
    CHECK(b.hi == 1.0);
    b = tail_energy(s, 2);
    CHECK(b.lo == 0.0);
    CHECK(b.hi == 0.0);
}

TEST_CASE("tail_energy: cesaro encloses zeta(2) tightly")
{
    const double z2 = std::numbers::pi * std::numbers::pi / 6.0;
    const auto b = tail_energy(SequenceSpec::cesaro(), 0);
    CHECK(b.contains(z2));
    CHECK(b.width() < 1e-6 * z2);
    for (std::size_t m : {1u, 10u, 100u, 1000u}) {
        const auto bm = tail_energy(SequenceSpec::cesaro(), m);
        double partial = 0.0;
        for (std::size_t k = 1; k <= m; ++k) partial += 1.0 / (double(k) * double(k));
        CHECK(bm.contains(z2 - partial, 1e-13));
    }
}

TEST_CASE("tail_energy: single atom geometric closed form")
{
    const double t = 0.7;
    const complex w(0.3, -1.1);
    const auto s = moments_spec({{w, t}});
    for (std::size_t m : {0u, 1u, 5u, 40u}) {
        const double exact = std::norm(w) * std::pow(t, 2.0 * m) / (1 - t * t);
        const auto b = tail_energy(s, m);
        CHECK(b.lo == doctest::Approx(exact).epsilon(1e-13));
        CHECK(b.hi == doctest::Approx(exact).epsilon(1e-13));
    }
}

TEST_CASE("tail_energy: divergence is reported")
{
    CHECK_THROWS_AS(tail_energy(SequenceSpec::power(0.4), 0), DivergenceError);
    CHECK_THROWS_AS(tail_energy(SequenceSpec::power(0.5), 0), DivergenceError);
    CHECK_THROWS_AS(tail_energy(moments_spec({{1.0, 1.0}}), 0), DivergenceError);
    CHECK_NOTHROW(tail_energy(SequenceSpec::log_power(0.5, 1.0), 0));
}

TEST_CASE("tail_energy: partial sums never exceed the certified upper bound")
{
    for (const auto& spec : {SequenceSpec::cesaro(), SequenceSpec::power(0.75, 2.0, true),
                             SequenceSpec::log_power(1.0, 2.0), moments_spec({{1.0, 0.9}, {-0.5, 0.3}})}) {
        const auto tails = tail_energies(spec, 200);
        for (std::size_t m = 0; m <= 200; m += 7) {
            double partial = 0.0;
            for (std::size_t k = m; k < m + 5000; ++k) partial += spec.energy(k);
            CHECK(partial <= tails[m].hi);
            CHECK(tails[m].lo <= tails[m].hi);
            if (m > 0) CHECK(tails[m].hi <= tails[m - 1].hi);
        }
    }
}

TEST_CASE("sequence files: parse, round trip, errors")
{
    std::istringstream in("#terraced-seq v1\n1 0\n0 0\n");
    const auto s = read_sequence(in);
    CHECK(s.kind() == SequenceKind::finite_support);
    CHECK(s(0) == complex(1.0));
    CHECK(s(1) == complex(0.0));

    std::stringstream buf;
    write_sequence(buf, SequenceSpec::cesaro(), 8);
    const auto back = read_sequence(buf);
    for (std::size_t k = 0; k < 8; ++k) CHECK(back(k) == SequenceSpec::cesaro()(k));
    CHECK(back(8) == complex(0.0));

    const auto path = std::filesystem::temp_directory_path() / "terraced_roundtrip.seq";
    const auto cplx = SequenceSpec::finite({{0.1, -0.3}, {1e-300, 2.5e10}, {-7.0, 0.0}});
    save_sequence(cplx, path);
    const auto loaded = load_sequence(path);
    for (std::size_t k = 0; k < 3; ++k) CHECK(loaded(k) == cplx(k));
    std::filesystem::remove(path);

    std::istringstream bad("#terraced-seq v1\n1 0\n# note\n1 x0\n");
    try {
        read_sequence(bad);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
    std::istringstream noheader("1 0\n");
    CHECK_THROWS_AS(read_sequence(noheader), ParseError);
    CHECK_THROWS_AS(write_sequence(buf, SequenceSpec::cesaro()), std::invalid_argument);
}

TEST_CASE("difference_sequence")
{
    const auto d = difference_sequence(SequenceSpec::finite({1.0, 0.5, 0.25}));
    CHECK(d(0) == complex(-0.5));
    CHECK(d(1) == complex(-0.25));
    CHECK(d(2) == complex(-0.25));
    CHECK(d(3) == complex(0.0));

    const auto dc = difference_sequence(SequenceSpec::cesaro());
    CHECK(std::abs(dc(0) - complex(-0.5)) < 1e-16);
    CHECK(dc.upper_envelope().has_value());
    for (std::size_t k = 0; k < 1000; ++k) {
        CHECK(std::abs(dc(k)) <= (*dc.upper_envelope())(k) * (1 + 1e-12));
        if (dc.lower_envelope() && k >= dc.lower_envelope()->from)
            CHECK(std::abs(dc(k)) >= (*dc.lower_envelope())(k) * (1 - 1e-12));
    }

    const auto d1 = difference_sequence(SequenceSpec::power(0.0));
    CHECK(d1.support_end() == std::size_t{0});
}
