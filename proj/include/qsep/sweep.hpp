#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qsep/errors.hpp"

namespace qsep::sweep {

enum class Mode { Serial, Parallel };

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Decorrelated per-trial seed. Trial t gets the same generator stream no
/// matter how trials are scheduled across threads, so Serial and Parallel
/// sweeps produce identical result vectors.
inline std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index) {
    return splitmix64(base ^ splitmix64(index + 1));
}

/// Run fn(t, rng) for t in [0, trials) and collect the results in order.
/// fn must depend only on its arguments; results are written to disjoint
/// slots, so the parallel path needs no further synchronization.
template <typename R, typename Fn>
std::vector<R> run(int trials, std::uint64_t seed, Mode mode, Fn&& fn) {
    if (trials < 0) throw BadSpec("negative trial count");
    std::vector<R> out(static_cast<std::size_t>(trials));
    if (mode == Mode::Serial) {
        for (int t = 0; t < trials; ++t) {
            std::mt19937_64 rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
            out[static_cast<std::size_t>(t)] = fn(t, rng);
        }
        return out;
    }
    bool failed = false;
    std::string first_error;
#if defined(_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
    for (int t = 0; t < trials; ++t) {
        try {
            std::mt19937_64 rng(trial_seed(seed, static_cast<std::uint64_t>(t)));
            out[static_cast<std::size_t>(t)] = fn(t, rng);
        } catch (const std::exception& e) {
#if defined(_OPENMP)
#pragma omp critical
#endif
            {
                if (!failed) {
                    failed = true;
                    first_error = e.what();
                }
            }
        }
    }
    if (failed) throw Error("sweep trial failed: " + first_error);
    return out;
}

}  // namespace qsep::sweep
