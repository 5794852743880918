#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "terraced/sequences.hpp"

namespace terraced {

/// Dense row-major complex matrix.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const complex> data() const { return data_; }
    std::span<complex> data() { return data_; }

    bool is_real() const;
    DenseMatrix adjoint() const;
    DenseMatrix operator*(const DenseMatrix& rhs) const;
    DenseMatrix operator-(const DenseMatrix& rhs) const;
    std::vector<complex> operator*(std::span<const complex> x) const;

    /// max_{i,j} |a_ij|
    double max_abs() const;

    static DenseMatrix identity(std::size_t n);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<complex> data_;
};

/// N-section P_N R_alpha P_N of a Rhaly matrix.
struct TruncatedRhaly {
    SequenceSpec spec;
    std::size_t N;
    DenseMatrix matrix;
};

/// (R_alpha f)(k) = alpha_k * sum_{j <= k} f(j), one pass.
std::vector<complex> apply_rhaly(const SequenceSpec& spec, std::span<const complex> f);

TruncatedRhaly truncate_rhaly(const SequenceSpec& spec, std::size_t N);

/// Entry (k, j) = alpha_k beta_j for j <= k.
DenseMatrix truncate_factorable(const SequenceSpec& alpha, const SequenceSpec& beta, std::size_t N);

/// Thrown when the closed-form Gram matrix disagrees with R^* R.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Closed form of R_N^* R_N: entry (m, n) = sum_{k = max(m,n)}^{N-1} |alpha_k|^2.
/// Cross-checked against the explicit product to 1e-12 elementwise.
DenseMatrix gram_lshape(const SequenceSpec& spec, std::size_t N);

/// Same closed form without the cross-check.
DenseMatrix gram_lshape_closed_form(const SequenceSpec& spec, std::size_t N);

/// CSV with complex entries written as "re+imj" (17 significant digits).
void write_csv(std::ostream& out, const DenseMatrix& m);
std::string format_complex(complex z);

} // namespace terraced
