#include "terraced/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "terraced/operator.hpp"
#include "terraced/spectral.hpp"

namespace terraced {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kLn2 = std::numbers::ln2;

bool has_finite_support(const SequenceSpec& spec) { return spec.support_end().has_value(); }

double pow2(std::size_t h) { return std::ldexp(1.0, static_cast<int>(h)); }

// Block sums over Z_h = [2^h, 2^{h+1}): (sum (j+1)|a_j|^2, sum |a_j|^2).
std::pair<double, double> block_sums(const SequenceSpec& spec, std::size_t h)
{
    const std::size_t lo = std::size_t{1} << h;
    std::size_t hi = lo << 1;
    if (auto S = spec.support_end()) hi = std::min(hi, std::max(lo, *S));
    long double weighted = 0.0L, plain = 0.0L;
    for (std::size_t j = lo; j < hi; ++j) {
        const double e = spec.energy(j);
        weighted += static_cast<long double>(j + 1) * e;
        plain += e;
    }
    return {static_cast<double>(weighted), static_cast<double>(plain)};
}

// sup_{h >= h0} sigma_h^2 from an upper envelope e. Each block has 2^h terms,
// (j+1) <= j+shift and e is nonincreasing, so for s >= 1
//   sigma_h^2 <= scale^2 2^{h(2-2s)} ln(2^h+shift+1)^{-2t},
// which is nonincreasing in h.
double sigma_sq_sup_from(const Envelope& e, std::size_t h0)
{
    if (e.scale == 0.0) return 0.0;
    if (pow2(h0) < static_cast<double>(e.from) || e.s < 1.0) return kInf;
    double v = e.scale * e.scale * std::pow(2.0, static_cast<double>(h0) * (2.0 - 2.0 * e.s));
    if (e.t != 0.0) v *= std::pow(std::log(pow2(h0) + e.shift + 1.0), -2.0 * e.t);
    return v;
}

// sum_{h >= H} of the same bound raised to q/2.
double sigma_q_tail_from(const Envelope& e, std::size_t H, double q)
{
    if (e.scale == 0.0) return 0.0;
    if (pow2(H) < static_cast<double>(e.from) || e.s < 1.0 || H == 0) return kInf;
    const double scq = std::pow(e.scale, q);
    if (e.s > 1.0) {
        const double r = std::pow(2.0, q * (1.0 - e.s));
        double v = scq * std::pow(r, static_cast<double>(H)) / (1.0 - r);
        if (e.t != 0.0) v *= std::pow(std::log(pow2(H) + e.shift + 1.0), -q * e.t);
        return v;
    }
    // s = 1: terms <= scale^q (h ln 2)^{-qt}
    const double p = q * e.t;
    if (p <= 1.0) return kInf;
    const double Hd = static_cast<double>(H);
    return scq * std::pow(kLn2, -p) * (std::pow(Hd, -p) + std::pow(Hd, 1.0 - p) / (p - 1.0));
}

// sup over m > M of (m+1)(sum_{k >= m}|a_k|^2) from an upper envelope with s >= 1:
// with X = m + shift >= m+1, T(m) <= e(m)^2 + int_X^inf e^2, giving
//   scale^2 ln(X+1)^{-2t} [X^{1-2s} + X^{2-2s}/(2s-1)], nonincreasing in X.
double family_cap_sq(const Envelope& e, std::size_t M)
{
    if (e.scale == 0.0) return 0.0;
    if (M + 1 < e.from || e.s < 1.0) return kInf;
    const double X = static_cast<double>(M + 1) + e.shift;
    double v = std::pow(X, 1.0 - 2.0 * e.s) + std::pow(X, 2.0 - 2.0 * e.s) / (2.0 * e.s - 1.0);
    v *= e.scale * e.scale;
    if (e.t != 0.0) v *= std::pow(std::log(X + 1.0), -2.0 * e.t);
    return v;
}

// For m in Z_p: (m+1) T(m) <= 2^{p+1} sum_{h >= p} 2^{-h} sigma_h^2 <= 4 sup_{h >= p} sigma_h^2.
double dyadic_cap_sq(const SequenceSpec& spec, const Envelope& e, std::size_t M, std::size_t k_max)
{
    const std::size_t p0 = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(M + 1))));
    const std::size_t kk = std::max(k_max, p0);
    double sup = sigma_sq_sup_from(e, kk + 1);
    if (!std::isfinite(sup)) return kInf;
    for (std::size_t h = p0; h <= kk; ++h) sup = std::max(sup, block_sums(spec, h).first);
    return 4.0 * sup;
}

} // namespace

double DyadicProfile::sup() const
{
    double s = 0.0;
    for (double v : sigma) s = std::max(s, v);
    return s;
}

DyadicProfile sigma_profile(const SequenceSpec& spec, std::size_t k_max)
{
    if (auto S = spec.support_end()) {
        while (k_max < 62 && (std::size_t{2} << k_max) < *S) ++k_max;
    }
    DyadicProfile p;
    p.k_max = k_max;
    p.sigma.reserve(k_max + 2);
    p.sigma.push_back(std::abs(spec(0)));
    for (std::size_t k = 0; k <= k_max; ++k) {
        const auto [w, e] = block_sums(spec, k);
        p.sigma.push_back(std::sqrt(w));
        p.block_energy.push_back(e);
    }
    return p;
}

std::size_t default_horizon(const SequenceSpec& spec)
{
    std::size_t M = 4096;
    if (auto S = spec.support_end()) M = std::max(M, 4 * *S);
    return M;
}

JnEvaluator::JnEvaluator(const SequenceSpec& spec, std::optional<std::size_t> horizon)
    : M_(horizon.value_or(default_horizon(spec)))
{
    try {
        tails_ = tail_energies(spec, M_);
    } catch (const DivergenceError&) {
        divergent_ = true;
        return;
    }
    last_ = M_;
    if (auto S = spec.support_end(); S && *S <= M_ + 1) {
        exact_ = true;
        cap_ = 0.0;
        last_ = *S == 0 ? 0 : *S - 1;
        return;
    }
    if (const auto& up = spec.upper_envelope()) {
        const double fam = family_cap_sq(*up, M_);
        if (std::isfinite(fam)) cap_ = std::sqrt(std::min(fam, dyadic_cap_sq(spec, *up, M_, 20)));
    }
}

JnResult JnEvaluator::at(std::size_t n) const
{
    if (divergent_) return {{kInf, kInf}, n, false};
    if (n > M_) throw std::invalid_argument("J_n_bracket: horizon must be >= n");
    JnResult r;
    r.argmax_m = n;
    double lo2 = 0.0, hi2 = 0.0;
    for (std::size_t m = n; m <= std::max(n, last_); ++m) {
        const double w = static_cast<double>(m + 1 - n);
        const double l = w * tails_[m].lo;
        if (l > 0.0 && l >= lo2) {
            lo2 = l;
            r.argmax_m = m;
        }
        hi2 = std::max(hi2, w * tails_[m].hi);
    }
    r.value = {std::sqrt(lo2), std::max(std::sqrt(hi2), cap_)};
    r.exact = exact_;
    if (exact_) r.value.hi = r.value.lo;
    return r;
}

JnResult J_n_bracket(const SequenceSpec& spec, std::size_t n, std::optional<std::size_t> horizon)
{
    if (!horizon) horizon = std::max(default_horizon(spec), n);
    return JnEvaluator(spec, horizon).at(n);
}

std::vector<JnResult> J_n_brackets(const SequenceSpec& spec, std::span<const std::size_t> ns,
                                   std::optional<std::size_t> horizon)
{
    std::size_t M = horizon.value_or(default_horizon(spec));
    if (!horizon)
        for (std::size_t n : ns) M = std::max(M, n);
    const JnEvaluator ev(spec, M);
    std::vector<JnResult> out;
    out.reserve(ns.size());
    for (std::size_t n : ns) out.push_back(ev.at(n));
    return out;
}

JnResult bennett_K2(const SequenceSpec& alpha, const SequenceSpec& beta, std::optional<std::size_t> horizon)
{
    const std::size_t M = horizon.value_or(std::max(default_horizon(alpha), default_horizon(beta)));
    std::vector<Bracket> Ta;
    try {
        Ta = tail_energies(alpha, M);
    } catch (const DivergenceError&) {
        return {{kInf, kInf}, 0, false};
    }
    JnResult r;
    long double P = 0.0L;
    double lo2 = 0.0, hi2 = 0.0;
    for (std::size_t m = 0; m <= M; ++m) {
        P += beta.energy(m);
        const double p = static_cast<double>(P);
        const double l = Ta[m].lo * p;
        if (l > 0.0 && l >= lo2) {
            lo2 = l;
            r.argmax_m = m;
        }
        hi2 = std::max(hi2, Ta[m].hi * p);
    }

    double cap = kInf;
    const auto Sa = alpha.support_end();
    const auto Sb = beta.support_end();
    if (Sa && *Sa <= M + 1) {
        cap = 0.0;
        r.exact = true;
    } else if (Sb && *Sb <= M + 1) {
        cap = std::sqrt(Ta[M].hi * static_cast<double>(P));  // T is nonincreasing
    } else if (beta.kind() == SequenceKind::power && beta.exponent() == 0.0) {
        cap = std::abs(beta.scale()) * JnEvaluator(alpha, M).cap();
    }
    r.value = {std::sqrt(lo2), std::max(std::sqrt(hi2), cap)};
    if (r.exact && has_finite_support(alpha)) {
        bool exact_tails = true;
        for (const auto& b : Ta) exact_tails = exact_tails && b.exact();
        if (exact_tails) r.value.hi = r.value.lo;
        r.exact = exact_tails;
    }
    return r;
}

TailAnalysis analyze_tail(const SequenceSpec& spec, std::size_t k_max)
{
    TailAnalysis a;
    if (auto S = spec.support_end()) {
        a.lim_J = Bracket::point(0.0);
        a.sigma_to_zero = true;
        a.sigma_sq_beyond = (std::size_t{2} << k_max) >= *S ? 0.0 : kInf;
        return a;
    }
    if (const auto& up = spec.upper_envelope()) {
        a.sigma_sq_beyond = sigma_sq_sup_from(*up, k_max + 1);
        if (up->scale == 0.0 || up->s > 1.0 || (up->s == 1.0 && up->t > 0.0)) {
            a.sigma_to_zero = true;
            a.lim_J.hi = 0.0;
        } else if (up->s == 1.0) {
            // T(m) <= int_{m+shift-1/2} e^2 = scale^2/(m+shift-1/2), and m+1-n <= m+shift-1/2 for n >= 1
            a.lim_J.hi = up->scale;
        }
    }
    if (const auto& low = spec.lower_envelope(); low && low->scale > 0.0) {
        if (low->s < 1.0) {
            a.unbounded = true;
            a.sigma_away = true;
            a.lim_J = {kInf, kInf};
        } else if (low->s == 1.0 && low->t == 0.0) {
            // T(m) >= scale^2/(m+shift), and (m+1-n)/(m+shift) -> 1
            a.sigma_away = true;
            a.lim_J.lo = std::max(a.lim_J.lo, low->scale);
        }
    }
    return a;
}

double truncation_norm_lower(const SequenceSpec& spec, std::size_t N, int max_iter)
{
    if (N == 0) return 0.0;
    std::vector<complex> alpha(N);
    for (std::size_t k = 0; k < N; ++k) alpha[k] = spec(k);
    std::vector<complex> x(N, complex(1.0)), y(N);
    double best = 0.0, prev = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        double xn = 0.0;
        for (const auto& v : x) xn += std::norm(v);
        xn = std::sqrt(xn);
        if (xn == 0.0) break;
        for (auto& v : x) v /= xn;
        // y = R x
        complex prefix{};
        double yn = 0.0;
        for (std::size_t k = 0; k < N; ++k) {
            prefix += x[k];
            y[k] = alpha[k] * prefix;
            yn += std::norm(y[k]);
        }
        best = std::max(best, std::sqrt(yn));
        // x = R^* y
        complex suffix{};
        for (std::size_t j = N; j-- > 0;) {
            suffix += std::conj(alpha[j]) * y[j];
            x[j] = suffix;
        }
        if (it > 0 && best - prev <= 1e-14 * best) break;
        prev = best;
    }
    return best;
}

namespace {

NormResult norm_from(const SequenceSpec& spec, const DyadicProfile& profile, const TailAnalysis& tail,
                     const NormOptions& opt)
{
    NormResult r;
    r.J0 = JnEvaluator(spec, opt.horizon).at(0).value;
    r.sup_sigma_computed = profile.sup();
    r.sup_sigma_upper = std::max(r.sup_sigma_computed, std::sqrt(tail.sigma_sq_beyond));

    double trunc = 0.0;
    if (auto S = spec.support_end()) {
        const std::size_t N = std::max<std::size_t>(*S, 1);
        const double s = largest_singular_value(truncate_rhaly(spec, N).matrix);
        r.truncation_norms.emplace_back(N, s);
        trunc = s;
    } else {
        for (std::size_t N : opt.truncation_schedule) {
            const double s = truncation_norm_lower(spec, N);
            r.truncation_norms.emplace_back(N, s);
            trunc = std::max(trunc, s);
        }
    }

    double lo = std::max({r.J0.lo, r.sup_sigma_computed / kSqrt2, trunc});
    double hi = std::min(2 * kSqrt2 * r.J0.hi, 4 * kSqrt2 * r.sup_sigma_upper);
    if (tail.unbounded || !std::isfinite(r.J0.lo)) lo = hi = kInf;
    r.norm = {lo, std::max(lo, hi)};
    if (!std::isfinite(lo))
        r.bounded = Verdict::no;
    else if (std::isfinite(hi))
        r.bounded = Verdict::yes;
    return r;
}

EssentialResult essential_from(const SequenceSpec& spec, const NormResult& norm, const TailAnalysis& tail,
                               const NormOptions& opt)
{
    EssentialResult e;
    if (has_finite_support(spec)) {
        e.essential_norm = e.lim_J = Bracket::point(0.0);
        e.compact = Verdict::yes;
        return e;
    }
    if (norm.bounded == Verdict::no) {
        e.essential_norm = e.lim_J = {kInf, kInf};
        e.compact = Verdict::no;
        return e;
    }
    e.lim_J = tail.lim_J;
    // J_n decreases, so any J_n bounds the limit from above
    const JnEvaluator ev(spec, opt.horizon);
    e.lim_J.hi = std::min(e.lim_J.hi, ev.at(ev.horizon()).value.hi);
    e.essential_norm = {e.lim_J.lo, std::min(2 * kSqrt2 * e.lim_J.hi, norm.norm.hi)};
    if (tail.sigma_to_zero || e.lim_J.hi == 0.0)
        e.compact = Verdict::yes;
    else if (tail.sigma_away || e.lim_J.lo > 0.0)
        e.compact = Verdict::no;
    return e;
}

} // namespace

NormResult norm_bracket(const SequenceSpec& spec, const NormOptions& opt)
{
    const auto profile = sigma_profile(spec, opt.k_max);
    return norm_from(spec, profile, analyze_tail(spec, profile.k_max), opt);
}

EssentialResult essential_norm_bracket(const SequenceSpec& spec, const NormOptions& opt)
{
    const auto profile = sigma_profile(spec, opt.k_max);
    const auto tail = analyze_tail(spec, profile.k_max);
    return essential_from(spec, norm_from(spec, profile, tail, opt), tail, opt);
}

SchattenResult schatten_test(const SequenceSpec& spec, const DyadicProfile& profile, const TailAnalysis& tail,
                             double q)
{
    if (!(q > 1.0) || !std::isfinite(q)) throw std::invalid_argument("schatten_test: q must lie in (1, inf)");
    long double partial = 0.0L;
    for (double s : profile.sigma) partial += std::pow(s, q);
    const double head = static_cast<double>(partial);

    SchattenResult r;
    if (has_finite_support(spec) && tail.sigma_sq_beyond == 0.0) {
        r.sum = Bracket::point(head);
        r.verdict = Verdict::yes;
        return r;
    }
    bool diverges = tail.unbounded || tail.sigma_away;
    if (const auto& low = spec.lower_envelope(); low && low->scale > 0.0 && low->s == 1.0 && q * low->t <= 1.0)
        diverges = true;  // sigma_h^q >~ h^{-qt}
    if (diverges) {
        r.sum = {kInf, kInf};
        r.verdict = Verdict::no;
        return r;
    }
    double rest = kInf;
    if (const auto& up = spec.upper_envelope()) rest = sigma_q_tail_from(*up, profile.k_max + 1, q);
    r.sum = Bracket{head, head + rest}.widened(1e-13);
    r.verdict = std::isfinite(rest) ? Verdict::yes : Verdict::undetermined;
    return r;
}

SchattenResult schatten_test(const SequenceSpec& spec, double q, std::size_t k_max)
{
    if (!(q > 1.0) || !std::isfinite(q)) throw std::invalid_argument("schatten_test: q must lie in (1, inf)");
    const auto profile = sigma_profile(spec, k_max);
    return schatten_test(spec, profile, analyze_tail(spec, profile.k_max), q);
}

CriteriaReport criteria_report(const SequenceSpec& spec, std::span<const double> q_list, const NormOptions& opt)
{
    for (double q : q_list)
        if (!(q > 1.0) || !std::isfinite(q)) throw std::invalid_argument("criteria_report: q must lie in (1, inf)");
    CriteriaReport rep;
    rep.sequence = spec.describe();
    rep.profile = sigma_profile(spec, opt.k_max);
    const auto tail = analyze_tail(spec, rep.profile.k_max);
    rep.norm = norm_from(spec, rep.profile, tail, opt);
    rep.essential = essential_from(spec, rep.norm, tail, opt);
    for (double q : q_list) rep.schatten[q] = schatten_test(spec, rep.profile, tail, q);
    return rep;
}

} // namespace terraced
