#include "doctest.h"

#include <cmath>

#include "terraced/hadamard.hpp"
#include "terraced/spectral.hpp"
#include "test_support.hpp"

using namespace terraced;

TEST_CASE("T_c sections")
{
    const auto one = build_Tc(SequenceSpec::power(0.0), 3);
    CHECK((one - DenseMatrix::identity(3)).max_abs() == 0.0);

    const auto t = build_Tc(SequenceSpec::finite({0.0, 1.0}), 2);
    CHECK(t(0, 0) == complex(0.0));
    CHECK(t(0, 1) == complex(1.0));
    CHECK(t(1, 0) == complex(0.0));
    CHECK(t(1, 1) == complex(1.0));

    const auto g = build_Tc(SequenceSpec::finite({1.0, 0.5, 0.25}), 3);
    const double want[3][3] = {{1, -0.5, -0.25}, {0, 0.5, -0.25}, {0, 0, 0.25}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(g(i, j) == complex(want[i][j]));
}

TEST_CASE("eigen identity")
{
    const auto g = SequenceSpec::finite({1.0, 0.5, 0.25});
    CHECK(eigen_check(g, 0, 3) == 0.0);
    CHECK(eigen_check(g, 1, 3) == 0.0);
    CHECK_THROWS_AS(eigen_check(g, 3, 3), std::out_of_range);

    test::Rng rng(71);
    std::vector<complex> v(16);
    for (auto& z : v) z = rng.complex_gaussian();
    const auto c = SequenceSpec::finite(v);
    for (std::size_t k = 0; k < 16; ++k) CHECK(eigen_check(c, k, 16) < 1e-12 * (1 + std::abs(v[k])) * std::sqrt(k + 1.0));
}

TEST_CASE("shift decomposition")
{
    const auto cst = decompose_Tc(SequenceSpec::power(0.0, 2.5), 6);
    CHECK(cst.A.matrix.max_abs() == 0.0);
    CHECK(cst.residual == 0.0);
    CHECK(cst.D(3, 3) == complex(2.5));

    std::vector<complex> step(10, 1.0);
    step[0] = 0.0;
    const auto d = decompose_Tc(SequenceSpec::finite(step), 8);
    CHECK(d.A.matrix(0, 0) == complex(1.0));
    CHECK(d.A.matrix(3, 0) == complex(0.0));
    CHECK(d.A.matrix(3, 3) == complex(0.0));
    CHECK(d.D(0, 0) == complex(0.0));
    CHECK(d.D(5, 5) == complex(1.0));

    CHECK_THROWS_AS(decompose_Tc(SequenceSpec::finite(step), 1), std::invalid_argument);

    test::Rng rng(73);
    for (int trial = 0; trial < 20; ++trial) {
        const auto c = random_finite_sequence(rng, 8, 64);
        const std::size_t N = *c.support_end();
        const auto dec = decompose_Tc(c, N);
        CHECK(dec.residual < 1e-14);
        const auto a = singular_values(build_Tc(c, N)), b = singular_values(reconstruct_Tc_adjoint(dec));
        for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) <= 1e-10 * (1 + a[0]));
    }
}

TEST_CASE("multiplier spec differences")
{
    const MultiplierSpec m(SequenceSpec::finite({1.0, complex(0.0, 2.0), -1.0}));
    CHECK(m.alpha(0) == complex(-1.0, 2.0));
    CHECK(m.alpha(1) == complex(-1.0, -2.0));
    CHECK(m.alpha(2) == complex(1.0));
    CHECK(m.alpha(3) == complex(0.0));
}

TEST_CASE("multiplier verdicts")
{
    const std::vector<double> qs{1.5, 2.0, 3.0};
    const auto inv = main4_report(SequenceSpec::cesaro(), qs);
    CHECK(inv.bounded == Verdict::yes);
    CHECK(inv.compact == Verdict::yes);
    for (double q : qs) CHECK(inv.schatten.at(q) == Verdict::yes);

    const auto one = main4_report(SequenceSpec::power(0.0), qs);
    CHECK(one.bounded == Verdict::yes);
    CHECK(one.compact == Verdict::no);
    for (double q : qs) CHECK(one.schatten.at(q) == Verdict::no);

    const auto alt = main4_report(SequenceSpec::power(0.0, 1.0, true), qs);
    CHECK(alt.bounded == Verdict::no);
    for (const auto& b : alt.blocks) CHECK(b.value == doctest::Approx(std::ldexp(4.0, 2 * int(b.n))));

    test::Rng rng(79);
    const auto fin = main4_report(random_finite_sequence(rng, 4, 40), qs);
    CHECK(fin.bounded == Verdict::yes);
    CHECK(fin.compact == Verdict::yes);

    CHECK_THROWS_AS(main4_report(SequenceSpec::cesaro(), std::vector<double>{1.0}), std::invalid_argument);
}
