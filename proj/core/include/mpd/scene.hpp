#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mpd/flux.hpp"
#include "mpd/multipole.hpp"

namespace mpd::scene {

/// JSON syntax failure; byte is the parser position.
struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t bytePos)
        : std::runtime_error(msg), byte(bytePos) {}
    std::size_t byte = 0;
};

/// Schema or semantic failure: dangling name, degree cap, degenerate tet,
/// wrong component counts, unknown task kind, bad patch index.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// One batch task.  refs maps role names (distribution, field, velocity,
/// region, system, hyperflux) to scene entry names; region may be "all" where
/// a task supports evaluation over all of space.
struct Task {
    std::string name;
    std::string kind;
    std::map<std::string, std::string> refs;
    std::optional<int> patchIndex;
    std::optional<double> tolerance;  // overrides the run tolerance
    std::vector<int> suites;          // verify-suite subset (1-based); empty = all

    friend bool operator==(const Task&, const Task&) = default;
};

struct Scene {
    std::map<std::string, SimplicialRegion> regions;
    std::map<std::string, PolyScalarField> scalarFields;
    std::map<std::string, PolyVectorField> vectorFields;
    std::map<std::string, MultipoleDistribution> distributions;
    std::map<std::string, Hyperflux> hyperfluxes;
    std::map<std::string, BalanceSystem> balanceSystems;
    std::vector<Task> tasks;

    friend bool operator==(const Scene&, const Scene&) = default;
};

/// Parses and fully validates a scene document.  Throws ParseError on JSON
/// syntax errors and ValidationError on schema or semantic errors.
Scene parse_scene(const std::string& text);

/// Canonical serialization; parse_scene(serialize_scene(s)) == s field by field.
std::string serialize_scene(const Scene& s);

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct TaskReport {
    std::string name;
    std::string kind;
    std::map<std::string, std::string> inputs;  // echo of the task record
    std::map<std::string, double> results;
    std::vector<CheckResult> checks;
    double wallMs = 0.0;
};

struct Report {
    std::vector<TaskReport> tasks;
    int checksPassed = 0;
    int checksFailed = 0;
    bool allPassed = true;
    double totalMs = 0.0;
};

struct RunOptions {
    double tolerance = 1e-9;
    std::uint64_t seed = 12345;
    int cases = 200;
    int quadratureDegreeMargin = 0;
};

/// Executes every task; deterministic for a fixed scene and seed apart from
/// the timing fields.  Throws ValidationError for semantic failures discovered
/// during execution (e.g. a decompose task aimed at the wrong patch order).
Report run_scene(const Scene& s, const RunOptions& options);

std::string serialize_report(const Report& r);

}  // namespace mpd::scene
