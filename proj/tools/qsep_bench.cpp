// Times every verification suite on one worker and on all workers, checks the
// two runs produce bit-identical property values, and prints the speedups.

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qsep/suites.hpp"
#include "qsep/sweep.hpp"
#include "qsep/version.hpp"

namespace {

using namespace qsep;

int bench_trials(const std::string& suite, int override_trials) {
    if (override_trials > 0) return override_trials;
    if (suite == "theorem1") return 900;
    if (suite == "qutrit-closed-form") return 300;
    if (suite == "braunstein") return 2000;
    if (suite == "soundness-sweep") return 2400;
    return 0;  // thresholds has a fixed workload
}

bool is_timing(const std::string& name) {
    return name.size() >= 7 && name.compare(name.size() - 7, 7, "seconds") == 0;
}

bool same_values(const suites::SuiteResult& a, const suites::SuiteResult& b) {
    if (a.properties.size() != b.properties.size()) return false;
    for (size_t i = 0; i < a.properties.size(); ++i) {
        const auto& pa = a.properties[i];
        const auto& pb = b.properties[i];
        if (pa.name != pb.name) return false;
        if (is_timing(pa.name)) continue;  // wall clock, never bit-identical
        const bool both_nan = pa.value != pa.value && pb.value != pb.value;
        if (!both_nan && pa.value != pb.value) return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(kToolVersion) +
                 " bench: one-worker vs all-workers suite timings"};
    int trials = 0;
    std::uint64_t seed = 42;
    app.add_option("--trials", trials, "trial count for every suite (0 = bench default)");
    app.add_option("--seed", seed, "PRNG seed");
    CLI11_PARSE(app, argc, argv);

    std::printf("%-20s %8s %10s %10s %8s %6s %s\n", "suite", "trials", "serial",
                "parallel", "speedup", "equal", "result");
    bool all_ok = true;
    for (const std::string& name : suites::suite_names()) {
        const int n = bench_trials(name, trials);
        const suites::SuiteResult s =
            suites::run_suite(name, n, seed, sweep::Mode::Serial);
        const suites::SuiteResult p =
            suites::run_suite(name, n, seed, sweep::Mode::Parallel);
        const bool equal = same_values(s, p);
        const bool ok = equal && s.passed && p.passed;
        all_ok = all_ok && ok;
        std::printf("%-20s %8d %9.3fs %9.3fs %7.2fx %6s %s\n", name.c_str(), n,
                    s.seconds, p.seconds,
                    p.seconds > 0.0 ? s.seconds / p.seconds : 1.0,
                    equal ? "yes" : "NO", ok ? "pass" : "FAIL");
    }
    return all_ok ? 0 : 1;
}
