#include "terraced/sequences.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

namespace terraced {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
// relative outward rounding applied to brackets that come out of long sums
constexpr double kSumRounding = 1e-13;

} // namespace

struct SequenceSpec::State {
    SequenceKind kind = SequenceKind::finite_support;
    std::vector<complex> values;
    double s = 0.0;
    double t = 0.0;
    double scale = 1.0;
    bool alternating = false;
    std::vector<Atom> atoms;
    std::function<complex(std::size_t)> fn;
    std::string name;
    std::optional<Envelope> lower;
    std::optional<Envelope> upper;
    std::optional<std::size_t> support_end;
    bool real = true;
    // moments only: weight sitting at node 1 (forces alpha_k -> w1)
    complex weight_at_one{0.0, 0.0};
};

double Envelope::operator()(std::size_t k) const
{
    if (scale == 0.0) return 0.0;
    const double x = static_cast<double>(k) + shift;
    double v = scale * std::pow(x, -s);
    if (t != 0.0) v *= std::pow(std::log(x + 1.0), -t);
    return v;
}

bool Envelope::square_summable() const
{
    if (scale == 0.0) return true;
    return 2 * s > 1 || (2 * s == 1 && 2 * t > 1);
}

std::string_view to_string(SequenceKind kind)
{
    switch (kind) {
    case SequenceKind::finite_support: return "finite-support";
    case SequenceKind::power: return "power";
    case SequenceKind::log_power: return "log-power";
    case SequenceKind::moments: return "moments";
    case SequenceKind::custom: return "custom";
    }
    return "custom";
}

SequenceSpec SequenceSpec::finite(std::vector<complex> values)
{
    auto st = std::make_shared<State>();
    st->kind = SequenceKind::finite_support;
    for (const auto& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::invalid_argument("finite sequence: non-finite coefficient");
    std::size_t end = values.size();
    while (end > 0 && values[end - 1] == complex{}) --end;
    st->support_end = end;
    st->real = std::all_of(values.begin(), values.end(),
                           [](const complex& v) { return v.imag() == 0.0; });
    st->values = std::move(values);
    st->name = "finite-support";
    return SequenceSpec(std::move(st));
}

SequenceSpec SequenceSpec::log_power(double s, double t, double scale, bool alternating)
{
    if (!(s >= 0.0) || !(t >= 0.0) || !std::isfinite(s) || !std::isfinite(t))
        throw std::invalid_argument("power family: exponents must be finite and >= 0");
    if (!std::isfinite(scale)) throw std::invalid_argument("power family: non-finite scale");
    auto st = std::make_shared<State>();
    st->kind = t == 0.0 ? SequenceKind::power : SequenceKind::log_power;
    st->s = s;
    st->t = t;
    st->scale = scale;
    st->alternating = alternating;
    if (scale == 0.0) {
        st->support_end = 0;
    } else {
        Envelope env{std::abs(scale), s, t, 1, 0};
        st->lower = env;
        st->upper = env;
    }
    std::ostringstream os;
    os << (t == 0.0 ? "power" : "log-power") << "(s=" << s;
    if (t != 0.0) os << ", t=" << t;
    os << ", scale=" << scale << (alternating ? ", alternating" : "") << ")";
    st->name = os.str();
    return SequenceSpec(std::move(st));
}

SequenceSpec SequenceSpec::power(double s, double scale, bool alternating)
{
    return log_power(s, 0.0, scale, alternating);
}

SequenceSpec SequenceSpec::moments(std::vector<Atom> atoms)
{
    std::map<double, complex> merged;
    for (const auto& a : atoms) {
        if (!(a.node >= 0.0 && a.node <= 1.0))
            throw std::invalid_argument("moments: node outside [0,1]");
        if (!std::isfinite(a.weight.real()) || !std::isfinite(a.weight.imag()))
            throw std::invalid_argument("moments: non-finite weight");
        merged[a.node] += a.weight;
    }
    auto st = std::make_shared<State>();
    st->kind = SequenceKind::moments;
    st->name = "moments";
    double rho = 0.0;      // largest node in (0,1) carrying weight
    double w_inner = 0.0;  // total |w| over nodes in (0,1)
    for (const auto& [node, w] : merged) {
        if (w == complex{}) continue;
        st->atoms.push_back({w, node});
        if (w.imag() != 0.0) st->real = false;
        if (node == 1.0) {
            st->weight_at_one = w;
        } else if (node > 0.0) {
            rho = std::max(rho, node);
            w_inner += std::abs(w);
        }
    }
    const bool has_one = st->weight_at_one != complex{};
    if (!has_one && rho == 0.0) {
        // only an atom at 0 (or nothing): alpha = (w, 0, 0, ...)
        st->support_end = st->atoms.empty() ? 0 : 1;
        return SequenceSpec(std::move(st));
    }
    if (!has_one) {
        // rho^k (k+1)^2 <= max_x rho^(x-1) x^2, attained at x = -2/ln(rho)
        const double xs = -2.0 / std::log(rho);
        double peak = rho * 4.0;
        if (xs > 2.0) peak = std::max(peak, std::pow(rho, xs - 1.0) * xs * xs);
        st->upper = Envelope{w_inner * peak, 2.0, 0.0, 1, 1};
    } else {
        // alpha_k -> w1; past K the inner atoms contribute at most |w1|/2
        const double w1 = std::abs(st->weight_at_one);
        std::size_t from = 0;
        if (rho > 0.0 && w_inner > w1 / 2) {
            from = static_cast<std::size_t>(std::ceil(std::log(w1 / (2 * w_inner)) / std::log(rho)));
        }
        st->lower = Envelope{w1 / 2, 0.0, 0.0, 1, from};
        st->upper = Envelope{w1 + w_inner, 0.0, 0.0, 1, 0};
    }
    return SequenceSpec(std::move(st));
}

SequenceSpec SequenceSpec::custom(std::string name, std::function<complex(std::size_t)> fn,
                                  std::optional<Envelope> lower, std::optional<Envelope> upper,
                                  bool real)
{
    if (!fn) throw std::invalid_argument("custom sequence: empty closed form");
    auto st = std::make_shared<State>();
    st->kind = SequenceKind::custom;
    st->fn = std::move(fn);
    st->name = std::move(name);
    st->lower = lower;
    st->upper = upper;
    st->real = real;
    return SequenceSpec(std::move(st));
}

complex SequenceSpec::operator()(std::size_t k) const
{
    const State& st = *state_;
    switch (st.kind) {
    case SequenceKind::finite_support:
        return k < st.values.size() ? st.values[k] : complex{};
    case SequenceKind::power:
    case SequenceKind::log_power: {
        const double x = static_cast<double>(k) + 1.0;
        double v = st.scale * std::pow(x, -st.s);
        if (st.t != 0.0) v *= std::pow(std::log(x + 1.0), -st.t);
        if (st.alternating && (k & 1u)) v = -v;
        return {v, 0.0};
    }
    case SequenceKind::moments: {
        complex acc{};
        for (const auto& a : st.atoms) acc += a.weight * std::pow(a.node, static_cast<double>(k));
        return acc;
    }
    case SequenceKind::custom:
        return st.fn(k);
    }
    return {};
}

SequenceKind SequenceSpec::kind() const { return state_->kind; }
std::string SequenceSpec::describe() const { return state_->name; }
std::optional<std::size_t> SequenceSpec::support_end() const { return state_->support_end; }
const std::optional<Envelope>& SequenceSpec::lower_envelope() const { return state_->lower; }
const std::optional<Envelope>& SequenceSpec::upper_envelope() const { return state_->upper; }
bool SequenceSpec::is_real() const { return state_->real; }
const std::vector<complex>& SequenceSpec::values() const { return state_->values; }
const std::vector<Atom>& SequenceSpec::atoms() const { return state_->atoms; }
double SequenceSpec::exponent() const { return state_->s; }
double SequenceSpec::log_exponent() const { return state_->t; }
double SequenceSpec::scale() const { return state_->scale; }
bool SequenceSpec::alternating() const { return state_->alternating; }

SequenceSpec moments_spec(std::vector<Atom> atoms) { return SequenceSpec::moments(std::move(atoms)); }

namespace {

// Enclosure of the integral of x^-a ln(x+1)^-b over [u0, inf). The integrand
// is convex and decreasing, so on each geometric segment the midpoint rule
// undershoots and the trapezoid rule overshoots.
Bracket power_log_integral(double a, double b, double u0)
{
    if (b == 0.0) return Bracket::point(std::pow(u0, 1.0 - a) / (a - 1.0));
    const auto g = [&](double x) { return std::pow(x, -a) * std::pow(std::log(x + 1.0), -b); };
    constexpr double ratio = 1.01;
    constexpr int segments = 8000;
    long double lo = 0.0L, hi = 0.0L;
    double u = u0;
    double gu = g(u);
    for (int i = 0; i < segments; ++i) {
        const double v = u * ratio;
        const double gv = g(v);
        const double h = v - u;
        lo += h * g(0.5 * (u + v));
        hi += 0.5 * h * (gu + gv);
        u = v;
        gu = gv;
    }
    // remainder with the log factor frozen at its largest value
    if (a > 1.0)
        hi += std::pow(std::log(u + 1.0), -b) * std::pow(u, 1.0 - a) / (a - 1.0);
    else
        hi += std::pow(std::log(u), 1.0 - b) / (b - 1.0);
    return {static_cast<double>(lo), static_cast<double>(hi)};
}

} // namespace

Bracket power_log_series(double a, double b, double x0)
{
    if (!(x0 >= 1.0)) throw std::invalid_argument("power_log_series: x0 must be >= 1");
    if (a < 1.0 || (a == 1.0 && b <= 1.0)) return {kInf, kInf};

    // For convex decreasing g:  int_{x0} g + g(x0)/2  <=  sum_{x >= x0} g(x)  <=  int_{x0 - 1/2} g.
    double gx0 = std::pow(x0, -a);
    if (b != 0.0) gx0 *= std::pow(std::log(x0 + 1.0), -b);
    const double lo = power_log_integral(a, b, x0).lo + 0.5 * gx0;
    const double hi = power_log_integral(a, b, x0 - 0.5).hi;
    return Bracket{lo, std::max(lo, hi)}.widened(kSumRounding);
}

Bracket envelope_power_sum(const Envelope& env, double p, std::size_t from)
{
    if (from < env.from) throw std::invalid_argument("envelope_power_sum: index below envelope range");
    if (env.scale == 0.0) return Bracket::point(0.0);
    const double x0 = static_cast<double>(from) + env.shift;
    const Bracket series = power_log_series(p * env.s, p * env.t, x0);
    return series.scaled(std::pow(env.scale, p));
}

namespace {

std::vector<Bracket> finite_tails(const std::vector<complex>& values, std::size_t m_max)
{
    std::vector<Bracket> out(m_max + 1, Bracket::point(0.0));
    long double acc = 0.0L;
    for (std::size_t k = values.size(); k-- > 0;) {
        acc += std::norm(values[k]);
        if (k <= m_max) out[k] = Bracket::point(static_cast<double>(acc));
    }
    return out;
}

std::vector<Bracket> moment_tails(const std::vector<Atom>& atoms, std::size_t m_max)
{
    for (const auto& a : atoms)
        if (a.node == 1.0)
            throw DivergenceError("moment sequence with an atom at t = 1 is not square summable");
    std::vector<Bracket> out(m_max + 1);
    for (std::size_t m = 0; m <= m_max; ++m) {
        // sum_k |sum_i w_i t_i^k|^2 = sum_{i,j} w_i conj(w_j) (t_i t_j)^m / (1 - t_i t_j)
        complex acc{};
        for (const auto& ai : atoms)
            for (const auto& aj : atoms) {
                const double r = ai.node * aj.node;
                acc += ai.weight * std::conj(aj.weight) * std::pow(r, static_cast<double>(m)) / (1.0 - r);
            }
        out[m] = Bracket::point(std::max(0.0, acc.real()));
    }
    return out;
}

} // namespace

std::vector<Bracket> tail_energies(const SequenceSpec& spec, std::size_t m_max)
{
    if (spec.kind() == SequenceKind::finite_support) return finite_tails(spec.values(), m_max);
    if (spec.kind() == SequenceKind::moments) {
        if (spec.support_end()) {
            std::vector<complex> head;
            for (std::size_t k = 0; k < *spec.support_end(); ++k) head.push_back(spec(k));
            return finite_tails(head, m_max);
        }
        return moment_tails(spec.atoms(), m_max);
    }

    const auto& lower = spec.lower_envelope();
    const auto& upper = spec.upper_envelope();
    if (lower && !lower->square_summable())
        throw DivergenceError("sequence " + spec.describe() + " is not square summable");

    std::size_t cutoff = std::max({m_max + 64, 4 * m_max, std::size_t{64}});
    if (lower) cutoff = std::max(cutoff, lower->from);
    if (upper) cutoff = std::max(cutoff, upper->from);

    std::vector<long double> suffix(m_max + 1);
    long double acc = 0.0L;
    for (std::size_t k = cutoff; k-- > 0;) {
        acc += spec.energy(k);
        if (k <= m_max) suffix[k] = acc;
    }

    double rem_lo = 0.0;
    double rem_hi = kInf;
    if (lower) rem_lo = envelope_power_sum(*lower, 2.0, cutoff).lo;
    if (upper && upper->square_summable()) rem_hi = envelope_power_sum(*upper, 2.0, cutoff).hi;

    std::vector<Bracket> out(m_max + 1);
    for (std::size_t m = 0; m <= m_max; ++m) {
        const double head = static_cast<double>(suffix[m]);
        Bracket b{head + rem_lo, head + rem_hi};
        out[m] = b.widened(kSumRounding);
        out[m].lo = std::max(out[m].lo, 0.0);
    }
    return out;
}

Bracket tail_energy(const SequenceSpec& spec, std::size_t m)
{
    return tail_energies(spec, m).back();
}

SequenceSpec difference_sequence(const SequenceSpec& spec)
{
    switch (spec.kind()) {
    case SequenceKind::finite_support: {
        const auto& v = spec.values();
        std::vector<complex> d(v.size());
        for (std::size_t k = 0; k < v.size(); ++k)
            d[k] = (k + 1 < v.size() ? v[k + 1] : complex{}) - v[k];
        return SequenceSpec::finite(std::move(d));
    }
    case SequenceKind::moments: {
        std::vector<Atom> atoms;
        for (const auto& a : spec.atoms()) atoms.push_back({a.weight * (a.node - 1.0), a.node});
        return SequenceSpec::moments(std::move(atoms));
    }
    case SequenceKind::power:
    case SequenceKind::log_power: {
        const double s = spec.exponent();
        const double t = spec.log_exponent();
        const double sc = std::abs(spec.scale());
        if (sc == 0.0 || (s == 0.0 && t == 0.0 && !spec.alternating()))
            return SequenceSpec::finite({});
        std::optional<Envelope> lower;
        std::optional<Envelope> upper;
        if (spec.alternating()) {
            // |d_k| = g(k+1) + g(k+2) with g decreasing
            upper = Envelope{2 * sc, s, t, 1, 0};
            lower = Envelope{2 * sc, s, t, 2, 0};
        } else {
            // mean value theorem on g(x) = sc x^-s ln(x+1)^-t over [k+1, k+2]
            upper = Envelope{sc * (s + t / kLn2), s + 1.0, t, 1, 0};
            if (s > 0.0) lower = Envelope{sc * s, s + 1.0, t, 2, 0};
        }
        auto out = SequenceSpec::custom(
            "diff(" + spec.describe() + ")", [spec](std::size_t k) { return spec(k + 1) - spec(k); },
            lower, upper, true);
        return out;
    }
    case SequenceKind::custom:
        return SequenceSpec::custom("diff(" + spec.describe() + ")",
                                    [spec](std::size_t k) { return spec(k + 1) - spec(k); },
                                    std::nullopt, std::nullopt, spec.is_real());
    }
    return SequenceSpec::finite({});
}

// ---------------------------------------------------------------------------
// sequence files

namespace {

constexpr std::string_view kHeader = "#terraced-seq v1";

std::string_view trim(std::string_view s)
{
    const auto ws = " \t\r\n\f\v";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

double parse_field(std::string_view tok, std::size_t line, const char* field)
{
    double v = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (!tok.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw ParseError(line, std::string("malformed ") + field + " field '" + std::string(tok) + "'");
    if (!std::isfinite(v)) throw ParseError(line, std::string("non-finite ") + field + " field");
    return v;
}

} // namespace

SequenceSpec read_sequence(std::istream& in)
{
    std::string raw;
    std::size_t line = 0;
    bool header_seen = false;
    std::vector<complex> values;
    while (std::getline(in, raw)) {
        ++line;
        const auto text = trim(raw);
        if (!header_seen) {
            if (text != kHeader) throw ParseError(line, "missing header '#terraced-seq v1'");
            header_seen = true;
            continue;
        }
        if (text.empty() || text.front() == '#') continue;

        std::vector<std::string_view> tokens;
        std::size_t pos = 0;
        while (pos < text.size()) {
            const auto b = text.find_first_not_of(" \t", pos);
            if (b == std::string_view::npos) break;
            auto e = text.find_first_of(" \t", b);
            if (e == std::string_view::npos) e = text.size();
            tokens.push_back(text.substr(b, e - b));
            pos = e;
        }
        if (tokens.size() != 2)
            throw ParseError(line, "expected two fields 'RE IM', got " + std::to_string(tokens.size()));
        values.emplace_back(parse_field(tokens[0], line, "RE"), parse_field(tokens[1], line, "IM"));
    }
    if (!header_seen) throw ParseError(line == 0 ? 1 : line, "missing header '#terraced-seq v1'");
    return SequenceSpec::finite(std::move(values));
}

void write_sequence(std::ostream& out, const SequenceSpec& spec, std::optional<std::size_t> length)
{
    std::size_t n = 0;
    if (length) {
        n = *length;
    } else if (spec.kind() == SequenceKind::finite_support) {
        n = spec.values().size();
    } else if (spec.support_end()) {
        n = *spec.support_end();
    } else {
        throw std::invalid_argument("save_sequence: infinite sequence needs an explicit length");
    }
    out << kHeader << '\n';
    out << "# " << spec.describe() << ", " << n << " coefficients\n";
    char buf[64];
    for (std::size_t k = 0; k < n; ++k) {
        const complex v = spec(k);
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", v.real(), v.imag());
        out << buf;
    }
}

SequenceSpec load_sequence(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open sequence file " + path.string());
    return read_sequence(in);
}

void save_sequence(const SequenceSpec& spec, const std::filesystem::path& path,
                   std::optional<std::size_t> length)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write sequence file " + path.string());
    write_sequence(out, spec, length);
}

} // namespace terraced
