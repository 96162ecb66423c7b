// mpd: evaluate multipole distributions over simplicial regions, run bound
// charge and force decompositions, and check the built-in balance and
// identity suites.
//
// Exit codes: 0 all checks passed, 1 a check failed its tolerance,
//             2 scene parse error, 3 scene validation error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mpd/scene.hpp"
#include "mpd/verify.hpp"

namespace {

int write_output(const std::string& text, const std::string& outPath) {
    if (outPath.empty()) {
        std::cout << text << "\n";
        return 0;
    }
    std::ofstream out(outPath);
    if (!out) {
        std::cerr << "error: cannot write " << outPath << "\n";
        return 3;
    }
    out << text << "\n";
    return 0;
}

int run_command(const std::string& scenePath, const mpd::scene::RunOptions& options,
                const std::string& outPath) {
    std::ifstream in(scenePath);
    if (!in) {
        std::cerr << "error: cannot read " << scenePath << "\n";
        return 2;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    mpd::scene::Scene scene;
    try {
        scene = mpd::scene::parse_scene(buffer.str());
    } catch (const mpd::scene::ParseError& e) {
        std::cerr << "parse error at byte " << e.byte << ": " << e.what() << "\n";
        return 2;
    } catch (const mpd::scene::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    }

    mpd::scene::Report report;
    try {
        report = mpd::scene::run_scene(scene, options);
    } catch (const mpd::scene::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 3;
    }

    const int writeStatus = write_output(mpd::scene::serialize_report(report), outPath);
    if (writeStatus != 0) return writeStatus;
    return report.allPassed ? 0 : 1;
}

int verify_command(const mpd::VerifyOptions& options) {
    const std::vector<mpd::SuiteResult> results = mpd::run_builtin_suites(options);
    bool allPass = true;
    for (const auto& r : results) {
        std::printf("%-4s %-32s cases=%-4d residual=%.3e tol=%.1e (%.0f ms)%s%s\n",
                    r.pass ? "ok" : "FAIL", r.name.c_str(), r.cases, r.maxResidual, r.tolerance,
                    r.millis, r.note.empty() ? "" : "  ", r.note.c_str());
        allPass = allPass && r.pass;
    }
    std::printf("%s\n", allPass ? "all suites passed" : "suite failures detected");
    return allPass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multipole distributions on simplicial regions"};
    app.require_subcommand(1);

    std::string scenePath;
    std::string outPath;
    mpd::scene::RunOptions runOptions;

    CLI::App* run = app.add_subcommand("run", "run the tasks of a scene file");
    run->add_option("scene", scenePath, "scene JSON file")->required();
    run->add_option("--tolerance", runOptions.tolerance, "relative tolerance for checks");
    run->add_option("--seed", runOptions.seed, "seed for random-case suites");
    run->add_option("--cases", runOptions.cases, "case count for random-case suites");
    run->add_option("--out", outPath, "report path (default: stdout)");
    run->add_option("--quadrature-degree-margin", runOptions.quadratureDegreeMargin,
                    "extra quadrature exactness degree");

    mpd::VerifyOptions verifyOptions;
    CLI::App* verify = app.add_subcommand("verify", "run the built-in verification suites");
    verify->add_option("--seed", verifyOptions.seed, "seed for random cases");
    verify->add_option("--cases", verifyOptions.cases, "base case count (default 200)");
    verify->add_option("--tolerance", verifyOptions.tolerance,
                       "base relative tolerance (default 1e-9)");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return run_command(scenePath, runOptions, outPath);
    return verify_command(verifyOptions);
}
