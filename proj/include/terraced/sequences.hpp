#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "terraced/bracket.hpp"

namespace terraced {

using complex = std::complex<double>;

/// Raised when a sequence is provably not square summable.
class DivergenceError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised by the sequence-file reader; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Monotone modulus envelope  e(k) = scale * x^-s * ln(x+1)^-t  with x = k + shift,
/// valid for k >= from. Exponents are nonnegative so e is nonincreasing, which
/// is what the integral comparisons below rely on.
struct Envelope {
    double scale = 0.0;
    double s = 0.0;
    double t = 0.0;
    int shift = 1;
    std::size_t from = 0;

    double operator()(std::size_t k) const;
    /// sum_k e(k)^2 < inf
    bool square_summable() const;
};

struct Atom {
    complex weight;
    double node;
};

enum class SequenceKind { finite_support, power, log_power, moments, custom };

std::string_view to_string(SequenceKind kind);

/// A coefficient sequence alpha = (alpha_k), k = 0, 1, 2, ...
/// Immutable; cheap to copy (shared state).
class SequenceSpec {
public:
    static SequenceSpec finite(std::vector<complex> values);
    /// scale * (+-1)^k * (k+1)^-s
    static SequenceSpec power(double s, double scale = 1.0, bool alternating = false);
    /// scale * (+-1)^k * (k+1)^-s * ln(k+2)^-t
    static SequenceSpec log_power(double s, double t, double scale = 1.0, bool alternating = false);
    /// alpha_k = 1/(k+1)
    static SequenceSpec cesaro() { return power(1.0); }
    /// alpha_k = sum_i w_i t_i^k with 0^0 = 1.
    static SequenceSpec moments(std::vector<Atom> atoms);
    /// Closed form supplied by the caller. Without envelopes nothing beyond
    /// explicit partial sums can be certified.
    static SequenceSpec custom(std::string name, std::function<complex(std::size_t)> fn,
                               std::optional<Envelope> lower = std::nullopt,
                               std::optional<Envelope> upper = std::nullopt,
                               bool real = false);

    complex operator()(std::size_t k) const;
    complex eval(std::size_t k) const { return (*this)(k); }
    double energy(std::size_t k) const { return std::norm((*this)(k)); }

    SequenceKind kind() const;
    std::string describe() const;

    /// First index past the last nonzero coefficient, for finite-support specs.
    std::optional<std::size_t> support_end() const;
    /// Envelopes bounding |alpha_k| from below / above beyond some index.
    const std::optional<Envelope>& lower_envelope() const;
    const std::optional<Envelope>& upper_envelope() const;

    bool is_real() const;

    /// Raw parameters (for reporting and serialization).
    const std::vector<complex>& values() const;
    const std::vector<Atom>& atoms() const;
    double exponent() const;
    double log_exponent() const;
    double scale() const;
    bool alternating() const;

private:
    struct State;

    explicit SequenceSpec(std::shared_ptr<const State> state) : state_(std::move(state)) {}
    std::shared_ptr<const State> state_;
};

/// Convenience free function mirroring the operation name.
inline complex eval(const SequenceSpec& spec, std::size_t k) { return spec(k); }

SequenceSpec moments_spec(std::vector<Atom> atoms);

/// Certified enclosure of sum_{k >= m} |alpha_k|^2.
/// Throws DivergenceError when alpha is provably outside l^2.
Bracket tail_energy(const SequenceSpec& spec, std::size_t m);

/// Enclosures of the tail energies for every m in [0, m_max], sharing one
/// explicit-summation cutoff so the cost is linear in m_max.
std::vector<Bracket> tail_energies(const SequenceSpec& spec, std::size_t m_max);

/// Enclosure of sum_{x = x0, x0+1, ...} x^-a ln(x+1)^-b for x0 >= 1, a, b >= 0.
/// Divergent series yield {inf, inf}.
Bracket power_log_series(double a, double b, double x0);

/// Enclosure of sum_{k >= from} e(k)^p for an envelope e.
Bracket envelope_power_sum(const Envelope& env, double p, std::size_t from);

/// alpha_{k+1} - alpha_k, with envelopes derived where the family allows it.
SequenceSpec difference_sequence(const SequenceSpec& spec);

/// Sequence files: header "#terraced-seq v1", then "RE IM" per line.
SequenceSpec read_sequence(std::istream& in);
void write_sequence(std::ostream& out, const SequenceSpec& spec,
                    std::optional<std::size_t> length = std::nullopt);
SequenceSpec load_sequence(const std::filesystem::path& path);
/// Non-finite specs need an explicit length.
void save_sequence(const SequenceSpec& spec, const std::filesystem::path& path,
                   std::optional<std::size_t> length = std::nullopt);

} // namespace terraced
