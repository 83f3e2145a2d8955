#pragma once

#include <random>
#include <utility>
#include <vector>

#include "qsep/linalg.hpp"

namespace qsep {

/// Pure state |psi>. When the normalized flag is set the norm must be 1
/// within 1e-9; unnormalized vectors (e.g. sum_i |ii>) carry the flag false.
class PureState {
public:
    PureState(ComplexVector v, bool normalized);

    int dim() const { return vector_.dim(); }
    const ComplexVector& vector() const { return vector_; }
    bool normalized() const { return normalized_; }

private:
    ComplexVector vector_;
    bool normalized_;
};

/// Density operator on H_A (x) H_B. Hermitian and PSD by construction;
/// trace 1 when the normalized flag is set (sub-normalized operators are
/// legitimate outputs of channels that do not preserve trace).
class BipartiteState {
public:
    BipartiteState(int dA, int dB, ComplexMatrix m, bool normalized = true);

    int dA() const { return dA_; }
    int dB() const { return dB_; }
    int dim() const { return matrix_.dim(); }
    const ComplexMatrix& matrix() const { return matrix_; }
    bool normalized() const { return normalized_; }

private:
    int dA_, dB_;
    ComplexMatrix matrix_;
    bool normalized_;
};

struct DecompositionTerm {
    double p;
    PureState psi;  // A factor
    PureState phi;  // B factor
};

/// Convex mixture of product projectors: both a generator recipe and a
/// separability certificate.
class SeparableDecomposition {
public:
    SeparableDecomposition(int dA, int dB, std::vector<DecompositionTerm> terms);

    int dA() const { return dA_; }
    int dB() const { return dB_; }
    const std::vector<DecompositionTerm>& terms() const { return terms_; }

private:
    int dA_, dB_;
    std::vector<DecompositionTerm> terms_;
};

/// The weighted sum of product projectors sum_k p_k |psi_k><psi_k| (x) |phi_k><phi_k|.
BipartiteState assemble(const SeparableDecomposition& dec);

/// sum_i |i>(x)|i> on C^d (x) C^d, scaled by 1/sqrt(d) iff normalized.
PureState maximally_entangled(int d, bool normalized);

/// Von Neumann entropy (base 2) of the A-side reduced operator.
double entanglement_entropy(const PureState& psi, int dA, int dB);

/// Entropy characterization: E(psi) == log2(dA) within 1e-8. Requires dB >= dA.
bool is_maximally_entangled(const PureState& psi, int dA, int dB);

PureState random_pure(int d, std::mt19937_64& rng);

std::pair<SeparableDecomposition, BipartiteState>
random_separable(int dA, int dB, int k_terms, std::mt19937_64& rng);

/// Hilbert-Schmidt ensemble: G G^dagger / Tr(G G^dagger) for Gaussian G.
ComplexMatrix random_density(int d, std::mt19937_64& rng);

}  // namespace qsep
