#pragma once

#include <string>
#include <vector>

#include "qsep/states.hpp"

namespace qsep {

enum class OracleOutcome { Separable, Entangled };
enum class OracleMethod { PptExact, Certificate };

const char* to_string(OracleOutcome o);
const char* to_string(OracleMethod m);

struct OracleVerdict {
    OracleOutcome outcome;
    OracleMethod method;
    std::vector<double> pt_spectrum;  // filled by the exact-regime oracle
    std::string evidence;
};

/// Decisive separability test, valid only where positivity of the partial
/// transpose is equivalent to separability: 2x2, 2x3 and 3x2. Other
/// dimensions throw UnsupportedDimensions.
OracleVerdict oracle_separable(const BipartiteState& rho);

/// Validate an explicit decomposition against a state: accepts when the
/// assembled mixture matches rho within 1e-9 in Frobenius norm, otherwise
/// throws CertificateMismatch. Works at any dimensions.
OracleVerdict certified_verdict(const BipartiteState& rho,
                                const SeparableDecomposition& cert);

}  // namespace qsep
