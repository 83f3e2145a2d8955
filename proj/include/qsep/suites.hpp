#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qsep/states.hpp"
#include "qsep/sweep.hpp"

namespace qsep::suites {

/// One checked quantity. `ok` is decided by the suite (the relation is named
/// in `note`); `limit` is what the value was held against, NaN when the line
/// is informational only.
struct PropertyResult {
    std::string name;
    double value = 0.0;
    double limit = 0.0;
    bool ok = true;
    std::string note;
};

struct SuiteResult {
    std::string suite;
    bool passed = true;
    double seconds = 0.0;
    std::vector<PropertyResult> properties;
    std::vector<std::string> notes;
};

/// Round trip: measure-and-prepare channels built from random product
/// decompositions must reproduce the assembled state when fed the matched
/// maximally entangled input, raw and normalized variants alike.
SuiteResult theorem1_roundtrip(int trials, std::uint64_t seed, sweep::Mode mode);

/// Channel pinching versus the closed-form qutrit entry table, including the
/// table's known (1,2)/(2,1) defect and its exact correction.
SuiteResult qutrit_closed_form_suite(int trials, std::uint64_t seed, sweep::Mode mode);

/// Two-qubit spin-axis expansion: coefficients round-trip through the
/// 36-projector sum, and the depolarizing weights obey their sum rules.
SuiteResult braunstein_suite(int trials, std::uint64_t seed, sweep::Mode mode);

/// Noise thresholds: two-qubit worst case flips sign exactly at 1/15, the
/// isotropic family exactly at 1/(d+1) for d = 2, 3, 4.
SuiteResult thresholds_suite();

/// Adversarial agreement run: every criterion verdict on mixed ensembles at
/// decisive dimensions is compared against the exact oracle; any Separable
/// claim on an oracle-entangled state or any invalid certificate fails.
SuiteResult soundness_sweep(int trials, std::uint64_t seed, sweep::Mode mode);

SuiteResult run_suite(const std::string& name, int trials, std::uint64_t seed,
                      sweep::Mode mode);
std::vector<std::string> suite_names();

/// Mixture of nonnegative-vector products: every B block of the result is a
/// nonnegative combination of one projector, hence PSD.
BipartiteState random_block_positive(int dA, int dB, int k, std::mt19937_64& rng);

/// Random state with diagonal B blocks (no B coherence between basis states).
BipartiteState random_zero_pattern_state(int dA, int dB, std::mt19937_64& rng);

/// The two-qubit product projector whose matrix is constant 1/4.
BipartiteState plus_plus_projector();

BipartiteState bell_state();

}  // namespace qsep::suites
