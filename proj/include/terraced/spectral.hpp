#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "terraced/bracket.hpp"
#include "terraced/operator.hpp"
#include "terraced/sequences.hpp"

namespace terraced {

/// All singular values, descending. Throws std::domain_error on non-finite entries.
std::vector<double> singular_values(const DenseMatrix& m);

double largest_singular_value(const DenseMatrix& m);

inline const std::vector<std::size_t> kDefaultSchedule{128, 256, 512, 1024, 2048};

struct ApproxNumber {
    std::size_t index = 1;        ///< 1-based: a_1 is the norm
    std::vector<double> values;   ///< s_index(P_N R P_N) along the schedule
    double lower_bound = 0.0;     ///< last value
    bool stagnated = false;       ///< relative change of the last step < 1e-8 (heuristic)
    bool exact = false;           ///< finite support fully inside the last section
};

struct ApproxNumbers {
    std::vector<std::size_t> schedule;
    std::vector<std::vector<double>> singular_values;  ///< one descending list per N
    std::vector<ApproxNumber> numbers;                 ///< indices 1..n_max
};

/// Throws std::invalid_argument when the schedule is empty or not strictly
/// increasing, or when n_max exceeds its first entry.
ApproxNumbers approx_numbers(const SequenceSpec& spec, std::size_t n_max,
                             std::span<const std::size_t> schedule = kDefaultSchedule);

/// Certified enclosure of zeta(p), p > 1.
Bracket zeta_bracket(double p);

struct SchattenNorm {
    Bracket value;             ///< enclosure of ||R_alpha||_{S^q}
    std::size_t N = 0;         ///< section used for the lower end
    std::vector<double> lower_along_schedule;
    double sigma_q_upper = kInf;  ///< upper bound used for ||sigma||_q
};

/// lo from the largest section; hi from
///   ||a||_q^q <= 7 (4 sqrt2 ||sigma||_q)^q + 8 6^q zeta(q) ||sigma||_q^q.
SchattenNorm schatten_qnorm(const SequenceSpec& spec, double q,
                            std::span<const std::size_t> schedule = kDefaultSchedule);
/// Same, reusing already computed sections.
SchattenNorm schatten_qnorm(const SequenceSpec& spec, double q, const ApproxNumbers& sections);

struct SpectralReport {
    std::string sequence;
    ApproxNumbers sections;
    std::map<double, SchattenNorm> schatten;
};

SpectralReport spectral_report(const SequenceSpec& spec, std::size_t n_max, std::span<const double> q_list,
                               std::span<const std::size_t> schedule = kDefaultSchedule);

/// Worker count for independent sections: TERRACED_THREADS if set, else the
/// hardware concurrency.
std::size_t max_threads();

} // namespace terraced
