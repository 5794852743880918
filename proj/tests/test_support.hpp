#pragma once

#include <Eigen/Dense>

#include "terraced/operator.hpp"
#include "terraced/random.hpp"

namespace test {

using Rng = terraced::SplitMix64;

inline terraced::SequenceSpec random_finite(Rng& rng, std::size_t max_len = 24)
{
    return terraced::random_finite_sequence(rng, 1, max_len);
}

inline std::vector<terraced::complex> random_vector(Rng& rng, std::size_t n)
{
    std::vector<terraced::complex> v(n);
    for (auto& z : v) z = rng.complex_gaussian();
    return v;
}

inline Eigen::MatrixXcd to_eigen(const terraced::DenseMatrix& m)
{
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    return out;
}

inline double min_eigenvalue(const terraced::DenseMatrix& hermitian)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(hermitian), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

} // namespace test
