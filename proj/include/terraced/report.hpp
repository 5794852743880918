#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "terraced/criteria.hpp"
#include "terraced/eps_l.hpp"
#include "terraced/hadamard.hpp"
#include "terraced/interval.hpp"
#include "terraced/spectral.hpp"

namespace terraced {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "terraced-report/1";

/// Deterministic writer: two-space indent, numbers with 17 significant
/// digits, non-finite values as the strings "inf", "-inf", "nan".
std::string dump_json(const Json& j);

Json number(double v);
Json to_json(const Bracket& b);
Json to_json(Verdict v);
Json to_json(const SequenceSpec& spec);
Json to_json(const IntervalReport& r);
Json to_json(const DyadicProfile& p);
Json to_json(const JnResult& r);
Json to_json(const NormResult& r);
Json to_json(const EssentialResult& r);
Json to_json(const CriteriaReport& r);
Json to_json(const EpsLSequence& s);
Json to_json(const std::vector<ApproxBound>& b);
Json to_json(const ScriptLResult& r);
Json to_json(const ApproxNumbers& a);
Json to_json(const SpectralReport& r);
Json to_json(const Main4Report& r);

/// k, sigma_k, block_energy_k (k = -1 row carries an empty block energy)
void write_sigma_csv(std::ostream& out, const DyadicProfile& p);
/// N, index, value
void write_singular_csv(std::ostream& out, const ApproxNumbers& a);
/// n, block
void write_blocks_csv(std::ostream& out, const Main4Report& r);

std::string format_double(double v);

} // namespace terraced
