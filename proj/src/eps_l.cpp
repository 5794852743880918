#include "terraced/eps_l.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

#include "terraced/criteria.hpp"
#include "terraced/interval.hpp"

namespace terraced {

namespace {

constexpr double kTie = 1e-12;
constexpr double kSqrt2 = std::numbers::sqrt2;

} // namespace

std::string EpsLSequence::status_string() const
{
    switch (status) {
    case EpsLStatus::finite: return "finite(" + std::to_string(length()) + ")";
    case EpsLStatus::infinite_detected: return "infinite_detected";
    case EpsLStatus::undetermined: return "undetermined(cap_hit)";
    }
    return "undetermined(cap_hit)";
}

EpsLSequence build_eps_l(const SequenceSpec& spec, double epsilon, std::size_t cap)
{
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("build_eps_l: epsilon must be > 0");
    if (cap < 2) throw std::invalid_argument("build_eps_l: cap must be >= 2");

    EpsLSequence seq;
    seq.epsilon = epsilon;
    seq.cap = cap;

    const auto S = spec.support_end();
    // indices examined lie in [0, limit)
    const std::size_t limit = S ? *S : cap;
    std::vector<double> w(limit);
    for (std::size_t k = 0; k < limit; ++k) w[k] = spec.energy(k);
    const auto L_of = [&](std::size_t a, std::size_t b) {  // L([a, b]), b < limit
        return L_from_energies(std::span<const double>(w).subspan(a, b + 1 - a));
    };
    const double threshold = epsilon * (1 + kTie);

    std::optional<JnEvaluator> jn;
    double lim_J_lo = 0.0;
    if (!S) {
        jn.emplace(spec, std::max(default_horizon(spec), cap));
        lim_J_lo = analyze_tail(spec, 20).lim_J.lo;
    }

    for (;;) {
        const std::size_t ck = seq.c.back();
        // tail certificate L([c_k, inf)) <= epsilon
        if (S) {
            if (ck + 1 >= limit || L_of(ck, limit - 1) <= threshold) {
                seq.status = EpsLStatus::finite;
                return seq;
            }
        } else if (ck <= jn->horizon() && 2 * kSqrt2 * jn->at(ck).value.hi <= epsilon) {
            seq.status = EpsLStatus::finite;
            return seq;
        }

        // L([c_k, t-1]) is nondecreasing in t; find the least t with L > eps.
        std::size_t good = ck + 1;  // L([c_k, good-1]) <= eps (singleton)
        std::size_t bad = 0;
        std::size_t len = 2;
        while (ck + len <= limit) {
            if (L_of(ck, ck + len - 1) > threshold) {
                bad = ck + len;
                break;
            }
            good = ck + len;
            len *= 2;
        }
        if (!bad && good < limit && L_of(ck, limit - 1) > threshold) bad = limit;
        if (!bad) {
            // scan exhausted without a cut and without a certificate
            seq.status = epsilon < kSqrt2 * lim_J_lo ? EpsLStatus::infinite_detected : EpsLStatus::undetermined;
            return seq;
        }
        while (bad - good > 1) {
            const std::size_t mid = good + (bad - good) / 2;
            if (L_of(ck, mid - 1) > threshold)
                bad = mid;
            else
                good = mid;
        }
        seq.c.push_back(bad);
    }
}

std::vector<ApproxBound> approx_number_bounds(const EpsLSequence& seq)
{
    std::vector<ApproxBound> out;
    const double v = seq.epsilon / kSqrt2;
    const std::size_t N = seq.length();
    if (seq.status == EpsLStatus::finite) out.push_back({2 * N + 2, ApproxBound::upper, v});
    if (N >= 1) out.push_back({N, ApproxBound::lower, v});
    return out;
}

ScriptLResult script_L_limit(const SequenceSpec& spec, std::span<const std::size_t> n_grid, std::size_t b_cap)
{
    ScriptLResult r;
    const std::size_t top = spec.support_end() ? std::min(b_cap, std::max<std::size_t>(*spec.support_end(), 1) - 1)
                                               : b_cap;
    for (std::size_t n : n_grid)
        if (n <= top) r.samples.emplace_back(n, L_value(spec, {n, top}));

    if (spec.support_end()) {
        r.value = Bracket::point(0.0);
        return r;
    }
    const auto ess = essential_norm_bracket(spec);
    if (!std::isfinite(ess.lim_J.lo)) {
        r.value = {kInf, kInf};
        return r;
    }
    double hi = ess.lim_J.hi;
    std::size_t M = default_horizon(spec);
    for (std::size_t n : n_grid) M = std::max(M, n);
    const JnEvaluator ev(spec, M);
    for (std::size_t n : n_grid) hi = std::min(hi, ev.at(n).value.hi);
    r.value = Bracket{kSqrt2 * ess.lim_J.lo, 2 * kSqrt2 * hi}.widened(1e-12);
    return r;
}

} // namespace terraced
