#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mpd {

struct SuiteResult {
    std::string name;
    int cases = 0;
    double maxResidual = 0.0;  // worst scaled residual over all cases
    double tolerance = 0.0;
    bool pass = false;
    double millis = 0.0;
    std::string note;
};

/// tolerance scales every suite's pinned tolerance by tolerance/1e-9, and
/// cases scales every suite's pinned case count by cases/200, so the defaults
/// reproduce the built-in protocol exactly.
struct VerifyOptions {
    std::uint64_t seed = 12345;
    int cases = 200;
    double tolerance = 1e-9;
};

/// The nine built-in verification suites: decomposition identities, balance
/// laws, energy-rate consistency, and structural invariants, at desk scale.
std::vector<SuiteResult> run_builtin_suites(const VerifyOptions& options);

bool all_passed(const std::vector<SuiteResult>& results);

}  // namespace mpd
