#include "terraced/interval.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace terraced {

NaturalInterval::NaturalInterval(std::size_t a_, std::size_t b_) : a(a_), b(b_)
{
    if (a > b) throw std::invalid_argument("NaturalInterval: a > b");
}

namespace {

std::vector<double> energies_on(const SequenceSpec& spec, NaturalInterval I)
{
    std::vector<double> w(I.cardinality());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = spec.energy(I.a + i);
    return w;
}

// P[i] = w_0 + ... + w_{i-1}; Q[i] = w_i + ... + w_{n-1}.
void prefix_suffix(std::span<const double> w, std::vector<double>& P, std::vector<double>& Q)
{
    const std::size_t n = w.size();
    P.assign(n + 1, 0.0);
    Q.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) P[i + 1] = P[i] + w[i];
    for (std::size_t i = n; i-- > 0;) Q[i] = Q[i + 1] + w[i];
}

double sum_of(std::span<const double> w)
{
    long double s = 0.0L;
    for (double x : w) s += x;
    return static_cast<double>(s);
}

double lambda_max_dense(const std::vector<double>& P, const std::vector<double>& Q, std::size_t n)
{
    Eigen::MatrixXd G(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) G(i, j) = 2.0 * P[std::min(i, j)] * Q[std::max(i, j)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G, Eigen::EigenvaluesOnly);
    return std::max(0.0, es.eigenvalues()(n - 1));
}

// y = G x in linear time:
// y_i = 2 [ Q_i sum_{j<=i} P_j x_j + P_i sum_{j>i} Q_j x_j ].
void gram_apply(const std::vector<double>& P, const std::vector<double>& Q, const std::vector<double>& x,
                std::vector<double>& y)
{
    const std::size_t n = x.size();
    double suffix = 0.0;
    for (std::size_t j = 0; j < n; ++j) suffix += Q[j] * x[j];
    double prefix = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        prefix += P[i] * x[i];
        suffix -= Q[i] * x[i];
        y[i] = 2.0 * (Q[i] * prefix + P[i] * suffix);
    }
}

double lambda_max_power(const std::vector<double>& P, const std::vector<double>& Q, std::size_t n)
{
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n))), y(n);
    double lambda = 0.0;
    for (int it = 0; it < 10000; ++it) {
        gram_apply(P, Q, x, y);
        double rq = 0.0, norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            rq += x[i] * y[i];
            norm2 += y[i] * y[i];
        }
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) return 0.0;
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
        const bool done = it > 0 && std::abs(rq - lambda) <= 1e-12 * std::abs(rq);
        lambda = rq;
        if (done) break;
    }
    return std::max(0.0, lambda);
}

} // namespace

double mu(const SequenceSpec& spec, NaturalInterval I)
{
    return sum_of(energies_on(spec, I));
}

double l_form(const SequenceSpec& spec, NaturalInterval I, std::span<const complex> f)
{
    const std::size_t n = I.cardinality();
    if (f.size() != n) throw std::invalid_argument("l_form: f must have one entry per index of I");
    std::vector<complex> alpha(n);
    for (std::size_t i = 0; i < n; ++i) alpha[i] = spec(I.a + i);
    long double total = 0.0L;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m) {
            if (m == k) continue;
            complex inner{};
            for (std::size_t j = std::min(k, m) + 1; j <= std::max(k, m); ++j) inner += f[j];
            total += std::norm(alpha[k] * alpha[m] * inner);
        }
    return static_cast<double>(total);
}

std::vector<double> l_gram(const SequenceSpec& spec, NaturalInterval I)
{
    const auto w = energies_on(spec, I);
    std::vector<double> P, Q;
    prefix_suffix(w, P, Q);
    const std::size_t n = w.size();
    std::vector<double> G(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) G[i * n + j] = 2.0 * P[std::min(i, j)] * Q[std::max(i, j)];
    return G;
}

double l_form_gram(const SequenceSpec& spec, NaturalInterval I, std::span<const complex> f)
{
    const std::size_t n = I.cardinality();
    if (f.size() != n) throw std::invalid_argument("l_form_gram: f must have one entry per index of I");
    const auto G = l_gram(spec, I);
    complex acc{};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) acc += std::conj(f[i]) * G[i * n + j] * f[j];
    return acc.real();
}

double L_from_energies(std::span<const double> energies, EigenRoute route)
{
    const std::size_t n = energies.size();
    const double m = sum_of(energies);
    if (n <= 1 || m == 0.0) return 0.0;
    std::vector<double> P, Q;
    prefix_suffix(energies, P, Q);
    if (route == EigenRoute::automatic) route = n <= 512 ? EigenRoute::dense : EigenRoute::power;
    const double lambda = route == EigenRoute::dense ? lambda_max_dense(P, Q, n) : lambda_max_power(P, Q, n);
    return std::sqrt(lambda / m);
}

double L_value(const SequenceSpec& spec, NaturalInterval I)
{
    return L_from_energies(energies_on(spec, I));
}

double K_value(const SequenceSpec& spec, NaturalInterval I)
{
    const std::size_t n = I.cardinality();
    const auto w = energies_on(spec, I);
    const double m = sum_of(w);
    if (m == 0.0 || n == 1) return 0.0;

    // Column j of the cumulative-sum map S is 1 on rows i >= j; the centered
    // row is S_i - sum_k w_k S_k / mu, and the weighted average of column j
    // is (w_j + ... + w_{n-1}) / mu.
    std::vector<double> P, Q;
    prefix_suffix(w, P, Q);
    Eigen::MatrixXcd M(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const complex a = spec(I.a + i);
        for (std::size_t j = 0; j < n; ++j) {
            const double centered = (i >= j ? 1.0 : 0.0) - Q[j] / m;
            M(i, j) = a * centered;
        }
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
    return svd.singularValues()(0);
}

std::pair<double, double> A_c_B_c(const SequenceSpec& spec, NaturalInterval I, std::size_t c)
{
    if (!I.contains(c)) throw std::out_of_range("A_c_B_c: c must lie in the interval");
    const auto w = energies_on(spec, I);
    std::vector<double> P, Q;
    prefix_suffix(w, P, Q);
    const std::size_t ci = c - I.a;
    double A = 0.0, B = 0.0;
    for (std::size_t s = 0; s <= ci; ++s) A = std::max(A, static_cast<double>(ci - s) * P[s + 1]);
    for (std::size_t s = ci; s < w.size(); ++s) B = std::max(B, static_cast<double>(s - ci) * Q[s]);
    return {std::sqrt(A), std::sqrt(B)};
}

std::pair<double, std::size_t> J_value(const SequenceSpec& spec, NaturalInterval I)
{
    const auto w = energies_on(spec, I);
    const std::size_t n = w.size();
    std::vector<double> P, Q;
    prefix_suffix(w, P, Q);

    // A_c^2 = max_{s<=c} (c-s) P[s+1], B_c^2 = max_{s>=c} (s-c) Q[s]; quadratic in #I.
    double best = kInf;
    std::size_t best_c = I.a;
    for (std::size_t c = 0; c < n; ++c) {
        double A = 0.0, B = 0.0;
        for (std::size_t s = 0; s <= c; ++s) A = std::max(A, static_cast<double>(c - s) * P[s + 1]);
        for (std::size_t s = c; s < n; ++s) B = std::max(B, static_cast<double>(s - c) * Q[s]);
        const double v = std::sqrt(std::max(A, B));
        if (v < best) {
            best = v;
            best_c = I.a + c;
        }
    }
    return {best, best_c};
}

IntervalReport interval_report(const SequenceSpec& spec, NaturalInterval I)
{
    IntervalReport r;
    r.interval = I;
    r.mu = mu(spec, I);
    r.L = L_value(spec, I);
    r.K = K_value(spec, I);
    std::tie(r.J, r.argmin_c) = J_value(spec, I);
    return r;
}

} // namespace terraced
