#include "terraced/operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

namespace terraced {

bool DenseMatrix::is_real() const
{
    return std::all_of(data_.begin(), data_.end(), [](const complex& z) { return z.imag() == 0.0; });
}

DenseMatrix DenseMatrix::adjoint() const
{
    DenseMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const
{
    if (cols_ != rhs.rows_) throw std::invalid_argument("DenseMatrix: shape mismatch in product");
    DenseMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const complex a = (*this)(i, k);
            if (a == complex{}) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

DenseMatrix DenseMatrix::operator-(const DenseMatrix& rhs) const
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("DenseMatrix: shape mismatch in difference");
    DenseMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
    return out;
}

std::vector<complex> DenseMatrix::operator*(std::span<const complex> x) const
{
    if (x.size() != cols_) throw std::invalid_argument("DenseMatrix: shape mismatch in matvec");
    std::vector<complex> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        complex acc{};
        for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

double DenseMatrix::max_abs() const
{
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

DenseMatrix DenseMatrix::identity(std::size_t n)
{
    DenseMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
}

std::vector<complex> apply_rhaly(const SequenceSpec& spec, std::span<const complex> f)
{
    std::vector<complex> out(f.size());
    complex prefix{};
    for (std::size_t k = 0; k < f.size(); ++k) {
        prefix += f[k];
        out[k] = spec(k) * prefix;
    }
    return out;
}

TruncatedRhaly truncate_rhaly(const SequenceSpec& spec, std::size_t N)
{
    if (N == 0) throw std::invalid_argument("truncate_rhaly: N must be >= 1");
    DenseMatrix m(N, N);
    for (std::size_t k = 0; k < N; ++k) {
        const complex a = spec(k);
        for (std::size_t j = 0; j <= k; ++j) m(k, j) = a;
    }
    return {spec, N, std::move(m)};
}

DenseMatrix truncate_factorable(const SequenceSpec& alpha, const SequenceSpec& beta, std::size_t N)
{
    if (N == 0) throw std::invalid_argument("truncate_factorable: N must be >= 1");
    std::vector<complex> b(N);
    for (std::size_t j = 0; j < N; ++j) b[j] = beta(j);
    DenseMatrix m(N, N);
    for (std::size_t k = 0; k < N; ++k) {
        const complex a = alpha(k);
        for (std::size_t j = 0; j <= k; ++j) m(k, j) = a * b[j];
    }
    return m;
}

DenseMatrix gram_lshape_closed_form(const SequenceSpec& spec, std::size_t N)
{
    if (N == 0) throw std::invalid_argument("gram_lshape: N must be >= 1");
    std::vector<double> tail(N + 1, 0.0);
    for (std::size_t k = N; k-- > 0;) tail[k] = tail[k + 1] + spec.energy(k);
    DenseMatrix g(N, N);
    for (std::size_t m = 0; m < N; ++m)
        for (std::size_t n = 0; n < N; ++n) g(m, n) = tail[std::max(m, n)];
    return g;
}

DenseMatrix gram_lshape(const SequenceSpec& spec, std::size_t N)
{
    DenseMatrix g = gram_lshape_closed_form(spec, N);
    const DenseMatrix r = truncate_rhaly(spec, N).matrix;
    const DenseMatrix product = r.adjoint() * r;
    const double err = (g - product).max_abs();
    if (!(err <= 1e-12 * std::max(1.0, g.max_abs())))
        throw ConsistencyError("gram_lshape: closed form differs from R*R by " + std::to_string(err));
    return g;
}

std::string format_complex(complex z)
{
    char buf[96];
    const double im = z.imag();
    std::snprintf(buf, sizeof buf, "%.17g%s%.17gj", z.real(), std::signbit(im) ? "-" : "+", std::abs(im));
    return buf;
}

void write_csv(std::ostream& out, const DenseMatrix& m)
{
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_complex(m(i, j));
        }
        out << '\n';
    }
}

} // namespace terraced
