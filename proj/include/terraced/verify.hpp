#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "terraced/report.hpp"

namespace terraced {

struct SuiteResult {
    std::string name;
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::string first_failure;

    void check(bool ok, const std::string& what)
    {
        if (ok) {
            ++passed;
        } else {
            if (failed == 0) first_failure = what;
            ++failed;
        }
    }
};

struct VerifyReport {
    std::uint64_t seed = 0;
    std::size_t corpus_size = 0;
    std::vector<SuiteResult> suites;

    bool ok() const;
};

/// Runs every invariant suite on the seeded corpus (see random.hpp). A second
/// generator seeded with seed ^ 0x5eed5eed5eed5eed draws the auxiliary data
/// (subintervals, test vectors, partner sequences).
VerifyReport run_verify(std::uint64_t seed, std::size_t corpus_size = 100);

Json to_json(const VerifyReport& r);

} // namespace terraced
