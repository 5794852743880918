#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "terraced/bracket.hpp"
#include "terraced/criteria.hpp"
#include "terraced/operator.hpp"
#include "terraced/sequences.hpp"

namespace terraced {

/// Hadamard coefficients c together with alpha_k = c_{k+1} - c_k.
struct MultiplierSpec {
    SequenceSpec c;
    SequenceSpec alpha;

    explicit MultiplierSpec(SequenceSpec c_) : c(c_), alpha(difference_sequence(c_)) {}
};

/// Upper triangular: (i,i) = c_i, (i,j) = c_j - c_{j-1} for j > i.
DenseMatrix build_Tc(const SequenceSpec& c, std::size_t N);

/// || T_c v_k - c_k v_k ||_2 with v_k = e^0 + ... + e^k. Throws std::out_of_range for k >= N.
double eigen_check(const SequenceSpec& c, std::size_t k, std::size_t N);

struct TcDecomposition {
    DenseMatrix D;    ///< diag(c)
    TruncatedRhaly A; ///< Rhaly matrix of alpha_k = c_{k+1} - c_k
    /// max |T_c^* - (conj(D) + S conj(A))| with the last row and column masked
    double residual = 0.0;
    /// same over the whole section
    double residual_full = 0.0;
};

/// S is the lower shift. Entrywise conjugation makes the identity hold for complex c.
TcDecomposition decompose_Tc(const SequenceSpec& c, std::size_t N);

/// conj(D) + S conj(A), the right-hand side of the identity, on the section.
DenseMatrix reconstruct_Tc_adjoint(const TcDecomposition& d);

struct DiagonalStats {
    Bracket sup_abs;
    Bracket lim_abs;
    std::map<double, Bracket> q_sum;  ///< sum_k |c_k|^q
};

struct BlockRow {
    std::size_t n;
    double value;  ///< 2^n sum_{j in Z_n} |c_j - c_{j+1}|^2
};

struct Main4Report {
    std::string sequence;
    DiagonalStats diagonal;
    std::vector<BlockRow> blocks;
    Bracket block_sup;                    ///< sup_n 2^n sum_{Z_n} |c_j - c_{j+1}|^2
    std::map<double, Bracket> block_q_sum;  ///< sum_n (2^n sum_{Z_n} ...)^{q/2}
    Verdict bounded = Verdict::undetermined;
    Verdict compact = Verdict::undetermined;
    std::map<double, Verdict> schatten;
    /// criteria applied to the difference sequence
    Verdict blocks_bounded = Verdict::undetermined;
    Verdict blocks_compact = Verdict::undetermined;
};

/// Throws std::invalid_argument unless every q lies in (1, inf).
Main4Report main4_report(const SequenceSpec& c, std::span<const double> q_list, std::size_t k_max = 20);

} // namespace terraced
