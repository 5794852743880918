#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "terraced/bracket.hpp"
#include "terraced/sequences.hpp"

namespace terraced {

enum class EpsLStatus { finite, infinite_detected, undetermined };

/// Cut points c_0 = 0 < c_1 < ... with c_{k+1} the least t > c_k such that
/// L([c_k, t-1]) > epsilon.
struct EpsLSequence {
    double epsilon = 0.0;
    std::vector<std::size_t> c{0};
    EpsLStatus status = EpsLStatus::undetermined;
    std::size_t cap = 0;

    /// N with c = (c_0, ..., c_N)
    std::size_t length() const { return c.size() - 1; }
    std::string status_string() const;
};

/// Comparisons use L > epsilon (1 + 1e-12). Throws std::invalid_argument for
/// epsilon <= 0 or cap < 2.
EpsLSequence build_eps_l(const SequenceSpec& spec, double epsilon, std::size_t cap = 4096);

struct ApproxBound {
    std::size_t index;  ///< 1-based
    enum Kind { upper, lower } kind;
    double value;
};

/// finite(N): a_{2N+2} <= eps/sqrt2.  length N >= 1: a_N >= eps/sqrt2.
std::vector<ApproxBound> approx_number_bounds(const EpsLSequence& seq);

struct ScriptLResult {
    Bracket value;  ///< enclosure of lim_n L([n, inf))
    std::vector<std::pair<std::size_t, double>> samples;  ///< (n, L([n, b_cap])), diagnostic only
};

/// Lower end from the certified essential-norm route, upper end from
/// 2 sqrt2 J_n over the grid.
ScriptLResult script_L_limit(const SequenceSpec& spec, std::span<const std::size_t> n_grid, std::size_t b_cap);

} // namespace terraced
