#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string_view>

namespace terraced {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Certified enclosure [lo, hi] of a real quantity. hi may be +inf, which
/// means "no finite upper bound is certified".
struct Bracket {
    double lo = 0.0;
    double hi = 0.0;

    static Bracket point(double v) { return {v, v}; }
    static Bracket at_least(double v) { return {v, kInf}; }

    bool finite() const { return std::isfinite(hi); }
    bool exact() const { return lo == hi; }
    double width() const { return hi - lo; }

    bool contains(double x, double tol = 0.0) const
    {
        return x >= lo - tol && x <= hi + tol;
    }

    Bracket scaled(double factor) const
    {
        if (factor < 0) throw std::invalid_argument("Bracket::scaled: negative factor");
        return {lo * factor, hi * factor};
    }

    Bracket sqrt() const { return {std::sqrt(lo), std::sqrt(hi)}; }

    /// Outward rounding by a relative amount; exact zeros stay exact.
    Bracket widened(double rel) const
    {
        return {lo - std::abs(lo) * rel, hi + std::abs(hi) * rel};
    }

    /// Intersection of two enclosures of the same quantity.
    Bracket intersect(const Bracket& other) const
    {
        return {std::max(lo, other.lo), std::min(hi, other.hi)};
    }

    Bracket operator+(const Bracket& o) const { return {lo + o.lo, hi + o.hi}; }
};

/// Three-valued answer for questions about infinite index sets.
enum class Verdict { yes, no, undetermined };

inline std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::undetermined: return "undetermined";
    }
    return "undetermined";
}

/// Conjunction in three-valued logic: any "no" wins, then any "undetermined".
inline Verdict both(Verdict a, Verdict b)
{
    if (a == Verdict::no || b == Verdict::no) return Verdict::no;
    if (a == Verdict::yes && b == Verdict::yes) return Verdict::yes;
    return Verdict::undetermined;
}

} // namespace terraced
