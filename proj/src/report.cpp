#include "terraced/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace terraced {

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json number(double v)
{
    if (std::isfinite(v)) return v;
    return format_double(v);
}

namespace {

void write_string(std::ostream& out, const std::string& s)
{
    out << Json(s).dump();
}

void write_value(std::ostream& out, const Json& j, int depth)
{
    const std::string pad(2 * (depth + 1), ' ');
    const std::string close(2 * depth, ' ');
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            out << "{}";
            return;
        }
        out << "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out << ",\n";
            first = false;
            out << pad;
            write_string(out, it.key());
            out << ": ";
            write_value(out, it.value(), depth + 1);
        }
        out << '\n' << close << '}';
        return;
    }
    case Json::value_t::array: {
        if (j.empty()) {
            out << "[]";
            return;
        }
        // arrays of scalars stay on one line
        bool flat = true;
        for (const auto& e : j) flat = flat && !e.is_structured();
        if (flat) {
            out << '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out << ", ";
                write_value(out, j[i], depth + 1);
            }
            out << ']';
            return;
        }
        out << "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out << ",\n";
            out << pad;
            write_value(out, j[i], depth + 1);
        }
        out << '\n' << close << ']';
        return;
    }
    case Json::value_t::number_float: out << format_double(j.get<double>()); return;
    default: out << j.dump(); return;
    }
}

} // namespace

std::string dump_json(const Json& j)
{
    std::ostringstream out;
    write_value(out, j, 0);
    out << '\n';
    return out.str();
}

Json to_json(const Bracket& b)
{
    Json j;
    j["lo"] = number(b.lo);
    j["hi"] = number(b.hi);
    return j;
}

Json to_json(Verdict v) { return std::string(to_string(v)); }

Json to_json(const SequenceSpec& spec)
{
    Json j;
    j["kind"] = std::string(to_string(spec.kind()));
    j["describe"] = spec.describe();
    switch (spec.kind()) {
    case SequenceKind::finite_support: j["length"] = spec.values().size(); break;
    case SequenceKind::power:
    case SequenceKind::log_power:
        j["s"] = number(spec.exponent());
        j["t"] = number(spec.log_exponent());
        j["scale"] = number(spec.scale());
        j["alternating"] = spec.alternating();
        break;
    case SequenceKind::moments: {
        Json atoms = Json::array();
        for (const auto& a : spec.atoms())
            atoms.push_back({{"re", number(a.weight.real())}, {"im", number(a.weight.imag())}, {"node", number(a.node)}});
        j["atoms"] = atoms;
        break;
    }
    case SequenceKind::custom: break;
    }
    if (auto S = spec.support_end()) j["support_end"] = *S;
    return j;
}

Json to_json(const IntervalReport& r)
{
    Json j;
    j["a"] = r.interval.a;
    j["b"] = r.interval.b;
    j["mu"] = number(r.mu);
    j["L"] = number(r.L);
    j["K"] = number(r.K);
    j["J"] = number(r.J);
    j["argmin_c"] = r.argmin_c;
    j["exact"] = true;
    return j;
}

Json to_json(const DyadicProfile& p)
{
    Json j;
    j["k_max"] = p.k_max;
    Json sigma = Json::array();
    for (double v : p.sigma) sigma.push_back(number(v));
    Json blocks = Json::array();
    for (double v : p.block_energy) blocks.push_back(number(v));
    j["sigma_from_minus1"] = sigma;
    j["block_energy"] = blocks;
    j["exact"] = true;
    return j;
}

Json to_json(const JnResult& r)
{
    Json j = to_json(r.value);
    j["argmax_m"] = r.argmax_m;
    j["exact"] = r.exact;
    return j;
}

Json to_json(const NormResult& r)
{
    Json j;
    j["bracket"] = to_json(r.norm);
    j["bounded"] = to_json(r.bounded);
    j["J0"] = to_json(r.J0);
    j["sup_sigma"] = to_json(Bracket{r.sup_sigma_computed, r.sup_sigma_upper});
    Json t = Json::array();
    for (const auto& [N, v] : r.truncation_norms) t.push_back({{"N", N}, {"lower", number(v)}});
    j["truncation_norms"] = t;
    return j;
}

Json to_json(const EssentialResult& r)
{
    Json j;
    j["bracket"] = to_json(r.essential_norm);
    j["compact"] = to_json(r.compact);
    j["lim_J"] = to_json(r.lim_J);
    return j;
}

Json to_json(const CriteriaReport& r)
{
    Json j;
    j["norm"] = to_json(r.norm);
    j["essential_norm"] = to_json(r.essential);
    j["bounded"] = to_json(r.norm.bounded);
    j["compact"] = to_json(r.essential.compact);
    Json s = Json::array();
    for (const auto& [q, res] : r.schatten)
        s.push_back({{"q", number(q)}, {"verdict", to_json(res.verdict)}, {"sigma_q_sum", to_json(res.sum)}});
    j["schatten"] = s;
    j["sigma_profile"] = to_json(r.profile);
    return j;
}

Json to_json(const EpsLSequence& s)
{
    Json j;
    j["epsilon"] = number(s.epsilon);
    j["c"] = s.c;
    j["status"] = s.status_string();
    j["cap"] = s.cap;
    return j;
}

Json to_json(const std::vector<ApproxBound>& bounds)
{
    Json a = Json::array();
    for (const auto& b : bounds)
        a.push_back({{"index", b.index}, {"kind", b.kind == ApproxBound::upper ? "upper" : "lower"},
                     {"value", number(b.value)}});
    return a;
}

Json to_json(const ScriptLResult& r)
{
    Json j;
    j["bracket"] = to_json(r.value);
    Json s = Json::array();
    for (const auto& [n, v] : r.samples) s.push_back({{"n", n}, {"L_n_bcap", number(v)}});
    j["samples"] = s;
    j["samples_note"] = "diagnostic values of L([n, b_cap]); not certified bounds for the limit";
    return j;
}

Json to_json(const ApproxNumbers& a)
{
    Json j;
    j["N_schedule"] = a.schedule;
    Json nums = Json::array();
    for (const auto& n : a.numbers) {
        Json v = Json::array();
        for (double x : n.values) v.push_back(number(x));
        nums.push_back({{"index", n.index},
                        {"along_schedule", v},
                        {"lower_bound", number(n.lower_bound)},
                        {"stagnated", n.stagnated},
                        {"exact", n.exact}});
    }
    j["approx_numbers"] = nums;
    j["stagnation_note"] = "stagnation flags are heuristics, not certificates";
    return j;
}

Json to_json(const SpectralReport& r)
{
    Json j = to_json(r.sections);
    Json s = Json::array();
    for (const auto& [q, n] : r.schatten) {
        Json along = Json::array();
        for (double x : n.lower_along_schedule) along.push_back(number(x));
        s.push_back({{"q", number(q)}, {"bracket", to_json(n.value)}, {"lower_along_schedule", along}});
    }
    j["schatten_qnorm"] = s;
    return j;
}

Json to_json(const Main4Report& r)
{
    Json j;
    j["bounded"] = to_json(r.bounded);
    j["compact"] = to_json(r.compact);
    Json sq = Json::array();
    for (const auto& [q, v] : r.schatten) {
        sq.push_back({{"q", number(q)},
                      {"verdict", to_json(v)},
                      {"diagonal_q_sum", to_json(r.diagonal.q_sum.at(q))},
                      {"block_q_sum", to_json(r.block_q_sum.at(q))}});
    }
    j["schatten"] = sq;
    j["diagonal"] = {{"sup_abs", to_json(r.diagonal.sup_abs)}, {"lim_abs", to_json(r.diagonal.lim_abs)}};
    j["block_sup"] = to_json(r.block_sup);
    j["blocks_bounded"] = to_json(r.blocks_bounded);
    j["blocks_compact"] = to_json(r.blocks_compact);
    Json rows = Json::array();
    for (const auto& b : r.blocks) rows.push_back({{"n", b.n}, {"value", number(b.value)}});
    j["block_table"] = rows;
    return j;
}

void write_sigma_csv(std::ostream& out, const DyadicProfile& p)
{
    out << "k,sigma_k,block_energy_k\n";
    out << "-1," << format_double(p.sigma[0]) << ",\n";
    for (std::size_t k = 0; k < p.block_energy.size(); ++k)
        out << k << ',' << format_double(p.sigma[k + 1]) << ',' << format_double(p.block_energy[k]) << '\n';
}

void write_singular_csv(std::ostream& out, const ApproxNumbers& a)
{
    out << "N,index,value\n";
    for (std::size_t i = 0; i < a.schedule.size(); ++i)
        for (std::size_t n = 0; n < a.singular_values[i].size(); ++n)
            out << a.schedule[i] << ',' << n + 1 << ',' << format_double(a.singular_values[i][n]) << '\n';
}

void write_blocks_csv(std::ostream& out, const Main4Report& r)
{
    out << "n,block\n";
    for (const auto& b : r.blocks) out << b.n << ',' << format_double(b.value) << '\n';
}

} // namespace terraced
