#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "terraced/sequences.hpp"

namespace terraced {

/// Integer interval [a, b] of indices.
struct NaturalInterval {
    std::size_t a = 0;
    std::size_t b = 0;

    NaturalInterval() = default;
    NaturalInterval(std::size_t a_, std::size_t b_);

    std::size_t cardinality() const { return b + 1 - a; }
    bool contains(std::size_t k) const { return a <= k && k <= b; }
};

struct IntervalReport {
    NaturalInterval interval;
    double mu = 0.0;
    double L = 0.0;
    double K = 0.0;
    double J = 0.0;
    std::size_t argmin_c = 0;
};

double mu(const SequenceSpec& spec, NaturalInterval I);

/// Literal double sum over k != n in I; f[i] is the value at index a + i.
/// Cubic cost, kept as the reference route.
double l_form(const SequenceSpec& spec, NaturalInterval I, std::span<const complex> f);

/// f^* G f via the closed-form quadratic form (quadratic cost).
double l_form_gram(const SequenceSpec& spec, NaturalInterval I, std::span<const complex> f);

/// G[i][j] = 2 mu([a, min(i,j)-1]) mu([max(i,j), b]), real symmetric PSD.
std::vector<double> l_gram(const SequenceSpec& spec, NaturalInterval I);

double L_value(const SequenceSpec& spec, NaturalInterval I);

enum class EigenRoute { automatic, dense, power };

/// L evaluated from the moduli squared |alpha_k|^2 on the interval, in order.
/// Dense eigensolver up to 512 points, power iteration beyond.
double L_from_energies(std::span<const double> energies, EigenRoute route = EigenRoute::automatic);

double K_value(const SequenceSpec& spec, NaturalInterval I);

/// (A_c, B_c); throws std::out_of_range when c is not in I.
std::pair<double, double> A_c_B_c(const SequenceSpec& spec, NaturalInterval I, std::size_t c);

/// (J(I), smallest minimizing c).
std::pair<double, std::size_t> J_value(const SequenceSpec& spec, NaturalInterval I);

IntervalReport interval_report(const SequenceSpec& spec, NaturalInterval I);

} // namespace terraced
