#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "terraced/bracket.hpp"
#include "terraced/sequences.hpp"

namespace terraced {

/// sigma[0] holds sigma_{-1} = |alpha_0|; sigma[k+1] holds sigma_k, the square
/// root of sum_{j in Z_k} (j+1)|alpha_j|^2 over the dyadic block Z_k = [2^k, 2^{k+1}).
struct DyadicProfile {
    std::vector<double> sigma;
    std::vector<double> block_energy;
    std::size_t k_max = 0;

    /// k >= -1
    double sigma_at(int k) const { return sigma.at(static_cast<std::size_t>(k + 1)); }
    double sup() const;
};

/// Exact block sums for k = 0..k_max. Finite-support specs are extended so the
/// profile covers the whole support.
DyadicProfile sigma_profile(const SequenceSpec& spec, std::size_t k_max = 20);

struct JnResult {
    Bracket value;
    std::size_t argmax_m = 0;  ///< largest m attaining the explicit maximum
    bool exact = false;
};

/// Default horizon: max(4096, 4 * support end).
std::size_t default_horizon(const SequenceSpec& spec);

/// J_n = sup_{m >= n} (m+1-n)^{1/2} (sum_{k >= m} |alpha_k|^2)^{1/2}.
/// Candidates m in [n, M] are evaluated with tail brackets; m > M is covered
/// by a certified cap (family envelope, dyadic sigma bound), else hi = inf.
/// Tail brackets and the cap are computed once, so many n are cheap.
class JnEvaluator {
public:
    JnEvaluator(const SequenceSpec& spec, std::optional<std::size_t> horizon = std::nullopt);

    JnResult at(std::size_t n) const;
    std::size_t horizon() const { return M_; }
    /// bound on (m+1)^{1/2} T(m)^{1/2} over all m > M
    double cap() const { return cap_; }
    const std::vector<Bracket>& tails() const { return tails_; }
    bool divergent() const { return divergent_; }

private:
    std::size_t M_;
    std::vector<Bracket> tails_;
    double cap_ = kInf;
    bool exact_ = false;
    bool divergent_ = false;
    std::size_t last_ = 0;  // candidates beyond this index vanish identically
};

JnResult J_n_bracket(const SequenceSpec& spec, std::size_t n, std::optional<std::size_t> horizon = std::nullopt);

/// Several n at once, sharing the tail brackets and the cap.
std::vector<JnResult> J_n_brackets(const SequenceSpec& spec, std::span<const std::size_t> ns,
                                   std::optional<std::size_t> horizon = std::nullopt);

/// K_2 = sup_m (sum_{k >= m}|alpha_k|^2)^{1/2} (sum_{j <= m}|beta_j|^2)^{1/2}.
JnResult bennett_K2(const SequenceSpec& alpha, const SequenceSpec& beta,
                    std::optional<std::size_t> horizon = std::nullopt);

/// Asymptotic facts read off the family envelopes.
struct TailAnalysis {
    /// sup_{h > k_max} sigma_h^2 upper bound (inf when not certified)
    double sigma_sq_beyond = kInf;
    /// lim_n J_n enclosure
    Bracket lim_J{0.0, kInf};
    bool unbounded = false;     ///< certified: sup sigma = inf
    bool sigma_to_zero = false; ///< certified: sigma_k -> 0
    bool sigma_away = false;    ///< certified: liminf sigma_k > 0
};

TailAnalysis analyze_tail(const SequenceSpec& spec, std::size_t k_max);

struct NormOptions {
    std::optional<std::size_t> horizon;
    std::size_t k_max = 20;
    std::vector<std::size_t> truncation_schedule{64, 128, 256, 512, 1024, 2048, 4096};
};

struct NormResult {
    Bracket norm;
    Verdict bounded = Verdict::undetermined;
    Bracket J0;
    double sup_sigma_computed = 0.0;
    double sup_sigma_upper = kInf;
    /// (N, lower bound for ||P_N R P_N||) along the schedule
    std::vector<std::pair<std::size_t, double>> truncation_norms;
};

NormResult norm_bracket(const SequenceSpec& spec, const NormOptions& opt = {});

struct EssentialResult {
    Bracket essential_norm;
    Verdict compact = Verdict::undetermined;
    Bracket lim_J;
};

EssentialResult essential_norm_bracket(const SequenceSpec& spec, const NormOptions& opt = {});

struct SchattenResult {
    Verdict verdict = Verdict::undetermined;
    Bracket sum;  ///< enclosure of sum_{k >= -1} sigma_k^q
};

/// Throws std::invalid_argument unless 1 < q < inf.
SchattenResult schatten_test(const SequenceSpec& spec, double q, std::size_t k_max = 20);
SchattenResult schatten_test(const SequenceSpec& spec, const DyadicProfile& profile, const TailAnalysis& tail,
                             double q);

struct CriteriaReport {
    std::string sequence;
    NormResult norm;
    EssentialResult essential;
    DyadicProfile profile;
    std::map<double, SchattenResult> schatten;
};

CriteriaReport criteria_report(const SequenceSpec& spec, std::span<const double> q_list,
                               const NormOptions& opt = {});

/// Lower bound for ||P_N R P_N|| by power iteration on R^*R (O(N) per step).
/// Every iterate gives a valid lower bound, so early stopping is safe.
double truncation_norm_lower(const SequenceSpec& spec, std::size_t N, int max_iter = 3000);

} // namespace terraced
