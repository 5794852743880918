#include "terraced/hadamard.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace terraced {

DenseMatrix build_Tc(const SequenceSpec& c, std::size_t N)
{
    if (N == 0) throw std::invalid_argument("build_Tc: N must be >= 1");
    std::vector<complex> v(N);
    for (std::size_t k = 0; k < N; ++k) v[k] = c(k);
    DenseMatrix T(N, N);
    for (std::size_t i = 0; i < N; ++i) {
        T(i, i) = v[i];
        for (std::size_t j = i + 1; j < N; ++j) T(i, j) = v[j] - v[j - 1];
    }
    return T;
}

double eigen_check(const SequenceSpec& c, std::size_t k, std::size_t N)
{
    if (k >= N) throw std::out_of_range("eigen_check: k must be < N");
    const DenseMatrix T = build_Tc(c, N);
    std::vector<complex> v(N);
    for (std::size_t i = 0; i <= k; ++i) v[i] = 1.0;
    const auto Tv = T * std::span<const complex>(v);
    const complex ck = c(k);
    double r = 0.0;
    for (std::size_t i = 0; i < N; ++i) r += std::norm(Tv[i] - ck * v[i]);
    return std::sqrt(r);
}

DenseMatrix reconstruct_Tc_adjoint(const TcDecomposition& d)
{
    const std::size_t N = d.D.rows();
    DenseMatrix R(N, N);
    for (std::size_t i = 0; i < N; ++i) {
        R(i, i) = std::conj(d.D(i, i));
        if (i == 0) continue;
        for (std::size_t j = 0; j < N; ++j) R(i, j) += std::conj(d.A.matrix(i - 1, j));
    }
    return R;
}

TcDecomposition decompose_Tc(const SequenceSpec& c, std::size_t N)
{
    if (N < 2) throw std::invalid_argument("decompose_Tc: N must be >= 2");
    const MultiplierSpec m(c);
    TcDecomposition d{DenseMatrix(N, N), truncate_rhaly(m.alpha, N), 0.0, 0.0};
    for (std::size_t k = 0; k < N; ++k) d.D(k, k) = c(k);

    const DenseMatrix lhs = build_Tc(c, N).adjoint();
    const DenseMatrix diff = lhs - reconstruct_Tc_adjoint(d);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) {
            const double e = std::abs(diff(i, j));
            d.residual_full = std::max(d.residual_full, e);
            if (i + 1 < N && j + 1 < N) d.residual = std::max(d.residual, e);
        }
    return d;
}

namespace {

constexpr std::size_t kDiagonalHorizon = 4096;

DiagonalStats diagonal_stats(const SequenceSpec& c, std::span<const double> q_list)
{
    DiagonalStats st;
    const auto S = c.support_end();
    const std::size_t K = S ? *S : kDiagonalHorizon;
    double sup = 0.0;
    for (std::size_t k = 0; k < K; ++k) sup = std::max(sup, std::abs(c(k)));

    const auto& up = c.upper_envelope();
    const auto& low = c.lower_envelope();
    if (S) {
        st.sup_abs = Bracket::point(sup);
        st.lim_abs = Bracket::point(0.0);
    } else {
        st.sup_abs = {sup, up && K >= up->from ? std::max(sup, (*up)(K)) : kInf};
        st.lim_abs = {0.0, kInf};
        if (up) st.lim_abs.hi = (up->scale == 0.0 || up->s > 0.0 || up->t > 0.0) ? 0.0 : up->scale;
        if (low && low->s == 0.0 && low->t == 0.0) st.lim_abs.lo = low->scale;
    }

    for (double q : q_list) {
        long double acc = 0.0L;
        for (std::size_t k = 0; k < K; ++k) acc += std::pow(std::abs(c(k)), q);
        const double head = static_cast<double>(acc);
        if (S) {
            st.q_sum[q] = Bracket::point(head);
            continue;
        }
        Bracket b{head, kInf};
        if (up && K >= up->from) b.hi = head + envelope_power_sum(*up, q, K).hi;
        if (low && low->scale > 0.0) {
            const double a = q * low->s, bb = q * low->t;
            if (a < 1.0 || (a == 1.0 && bb <= 1.0)) b = {kInf, kInf};
        }
        st.q_sum[q] = std::isfinite(b.hi) ? b.widened(1e-13) : b;
    }
    return st;
}

Verdict finite_verdict(const Bracket& b)
{
    if (!std::isfinite(b.lo)) return Verdict::no;
    return std::isfinite(b.hi) ? Verdict::yes : Verdict::undetermined;
}

} // namespace

Main4Report main4_report(const SequenceSpec& c, std::span<const double> q_list, std::size_t k_max)
{
    for (double q : q_list)
        if (!(q > 1.0) || !std::isfinite(q)) throw std::invalid_argument("main4_report: q must lie in (1, inf)");

    Main4Report rep;
    rep.sequence = c.describe();
    rep.diagonal = diagonal_stats(c, q_list);

    const MultiplierSpec m(c);
    const auto profile = sigma_profile(m.alpha, k_max);
    const auto tail = analyze_tail(m.alpha, profile.k_max);

    double block_max = 0.0;
    for (std::size_t n = 0; n < profile.block_energy.size(); ++n) {
        const double v = std::ldexp(profile.block_energy[n], static_cast<int>(n));
        rep.blocks.push_back({n, v});
        block_max = std::max(block_max, v);
    }
    // 2^n B_n <= sigma_n^2, so the sigma bounds carry over
    if (tail.unbounded) {
        rep.block_sup = {kInf, kInf};
        rep.blocks_bounded = Verdict::no;
    } else {
        rep.block_sup = {block_max, std::max(block_max, tail.sigma_sq_beyond)};
        rep.blocks_bounded = std::isfinite(rep.block_sup.hi) ? Verdict::yes : Verdict::undetermined;
    }
    rep.blocks_compact = tail.sigma_to_zero ? Verdict::yes : tail.sigma_away ? Verdict::no : Verdict::undetermined;

    const Verdict diag_bounded = finite_verdict(rep.diagonal.sup_abs);
    Verdict diag_zero = Verdict::undetermined;
    if (rep.diagonal.lim_abs.hi == 0.0) diag_zero = Verdict::yes;
    if (rep.diagonal.lim_abs.lo > 0.0) diag_zero = Verdict::no;

    rep.bounded = both(diag_bounded, rep.blocks_bounded);
    rep.compact = both(diag_zero, rep.blocks_compact);

    for (double q : q_list) {
        const auto sq = schatten_test(m.alpha, profile, tail, q);
        long double acc = 0.0L;
        for (const auto& row : rep.blocks) acc += std::pow(row.value, q / 2);
        const double head = static_cast<double>(acc);
        rep.block_q_sum[q] = sq.verdict == Verdict::no ? Bracket{kInf, kInf} : Bracket{head, std::max(head, sq.sum.hi)};
        rep.schatten[q] = both(finite_verdict(rep.diagonal.q_sum[q]), sq.verdict);
    }
    return rep;
}

} // namespace terraced
