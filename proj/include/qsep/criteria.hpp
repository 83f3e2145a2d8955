#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qsep/channels.hpp"
#include "qsep/linalg.hpp"
#include "qsep/states.hpp"

namespace qsep {

enum class Outcome { Separable, Entangled, Inconclusive };

const char* to_string(Outcome o);

/// Result of one criterion run. Outcome semantics are one-sided: Separable is
/// only emitted by sufficient conditions (backed by a certificate where one
/// exists), Entangled only by necessary ones, and anything short of a proof is
/// Inconclusive.
struct Verdict {
    std::string criterion;
    Outcome outcome = Outcome::Inconclusive;
    std::optional<SeparableDecomposition> certificate;
    std::string details;
    std::vector<std::pair<std::string, double>> diagnostics;
};

/// rho reshaped as the dA x dA grid of dB x dB blocks rho^{iA jA}.
struct BlockView {
    int dA = 0, dB = 0;
    std::vector<ComplexMatrix> blocks;  // row-major over (iA, jA)

    const ComplexMatrix& block(int iA, int jA) const { return blocks[iA * dA + jA]; }
    ComplexMatrix& block(int iA, int jA) { return blocks[iA * dA + jA]; }
};

BlockView blocks_of(const BipartiteState& rho);
ComplexMatrix reassemble(const BlockView& bv);

/// Sufficient condition: every block diagonal (no |j><l| coherence on B,
/// j != l) implies rho = sum_l A_l (x) |l><l| is separable. Emits a
/// decomposition certificate on success.
Verdict corollary1_zero_pattern(const BipartiteState& rho);

std::vector<ComplexVector> computational_basis(int d);

/// The fixed orthonormal qutrit basis used by the closed-form reduction:
/// (sqrt2,-1,1)/2, (sqrt2,1,-1)/2, (0,1,1)/sqrt2.
std::vector<ComplexVector> qutrit_reduction_basis();

/// Pinch B in the given basis and report whether rho was already a fixed
/// point (then rho itself is separable, with certificate). The reduced state
/// is separable either way.
struct BasisReduction {
    BipartiteState reduced;
    Verdict verdict;
};
BasisReduction basis_reduction(const BipartiteState& rho,
                               const std::vector<ComplexVector>& basis);

/// Separable decomposition of the pinched state (id (x) pinch)(rho): for each
/// basis vector e_n, eigendecompose the dA x dA compression C_n[i,k] =
/// <e_n| rho^{ik} |e_n> and pair its eigenvectors with e_n.
SeparableDecomposition pinching_decomposition(const BipartiteState& rho,
                                              const std::vector<ComplexVector>& basis);

/// Qutrit pinching, computed two ways: through the channel (authoritative)
/// and through the closed-form entry table. The table's (1,2)/(2,1) entries
/// drop a B22/8 term, so delta exposes exactly that defect.
struct QutritReduction {
    BipartiteState channel_route;
    ComplexMatrix tabulated_route;
    ComplexMatrix delta;  // channel - tabulated
    double max_delta = 0.0;
};
QutritReduction qutrit_closed_form(const BipartiteState& rho);

/// Sufficient condition: all blocks rho^{iA jA} PSD implies separability
/// (Hadamard-product argument; no explicit decomposition).
Verdict theorem3_block_psd(const BipartiteState& rho);

/// Randomized probe of block positivity: sample density matrices sigma and
/// check sum_{ij} B_ij sigma_ij is real nonnegative for every block B. A violation is decisive evidence against block positivity
/// (Inconclusive); survival is reported as Separable-by-sampling with the
/// caveat recorded in details.
Verdict corollary2_sampled(const BipartiteState& rho, int trials, std::mt19937_64& rng);

/// Necessary condition: a negative partial-transpose eigenvalue proves
/// entanglement; PPT alone proves nothing here.
Verdict ppt_check(const BipartiteState& rho);

/// Two-qubit Bloch coefficients: rho = 1/4 (I + sum a_i s_i (x) I
/// + sum b_j I (x) s_j + sum c_ij s_i (x) s_j), all real for Hermitian rho.
struct BraunsteinCoefficients {
    std::array<double, 3> bloch_a{};               // coefficient of s_i (x) I
    std::array<double, 3> bloch_b{};               // coefficient of I (x) s_j
    std::array<std::array<double, 3>, 3> corr{};   // coefficient of s_i (x) s_j
};

BraunsteinCoefficients braunstein_coefficients(const BipartiteState& rho);

/// Rebuild the density matrix from coefficients as the 36-projector sum over
/// spin-axis eigenprojectors P_i^{+-} (x) P_j^{+-}.
ComplexMatrix braunstein_assemble(const BraunsteinCoefficients& co);

/// Weights q_n^{ij} of the 36-projector expansion of the depolarized state
/// D_eps(rho); index n = 0..3 enumerates the sign patterns (++, -+, +-, --).
using QCoefficients = std::array<std::array<std::array<double, 3>, 3>, 4>;

QCoefficients depolarizing_q_coefficients(const BraunsteinCoefficients& co,
                                          double epsilon);
double min_q(const QCoefficients& q);
double total_q(const QCoefficients& q);

/// All 36 weights nonnegative at this epsilon proves D_eps(rho) separable,
/// with the explicit 36-term (at most) product decomposition as certificate.
Verdict depolarizing_two_qubit_check(const BipartiteState& rho, double epsilon);

enum class EbThreshold { EB, NotEB };

/// Depolarizing on C^d is entanglement breaking iff epsilon <= 1/(d+1).
EbThreshold depolarizing_isotropic_threshold(int d, double epsilon);

}  // namespace qsep
