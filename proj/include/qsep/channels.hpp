#pragma once

#include <utility>
#include <vector>

#include "qsep/linalg.hpp"
#include "qsep/states.hpp"

namespace qsep {

enum class TracePreservation { Preserving, SubPreserving, Invalid };

const char* to_string(TracePreservation t);

/// Measure-and-prepare map sigma -> sum_k R_k Tr(F_k sigma).
/// Construction validates each R_k (PSD, trace 1) and F_k (PSD) but not the
/// completeness sum: classification of sum_k F_k against the identity is the
/// job of trace_preservation(), so sub- and super-complete effect sets remain
/// representable.
class HolevoChannel {
public:
    using Pair = std::pair<ComplexMatrix, ComplexMatrix>;  // (R_k, F_k)

    HolevoChannel(int din, int dout, std::vector<Pair> pairs);

    int din() const { return din_; }
    int dout() const { return dout_; }
    const std::vector<Pair>& pairs() const { return pairs_; }

private:
    int din_, dout_;
    std::vector<Pair> pairs_;
};

/// One dout x din Kraus operator. Kept separate from ComplexMatrix, which is
/// square by contract.
struct KrausOperator {
    int rows = 0, cols = 0;
    std::vector<Complex> a;

    KrausOperator() = default;
    KrausOperator(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    Complex& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    const Complex& operator()(int r, int c) const {
        return a[static_cast<size_t>(r) * cols + c];
    }
    static KrausOperator from_square(const ComplexMatrix& m);
};

class KrausChannel {
public:
    KrausChannel(int din, int dout, std::vector<KrausOperator> ops);

    int din() const { return din_; }
    int dout() const { return dout_; }
    const std::vector<KrausOperator>& operators() const { return ops_; }

private:
    int din_, dout_;
    std::vector<KrausOperator> ops_;
};

/// rho -> (1 - epsilon) * Tr(rho) * I/d + epsilon * rho.
class DepolarizingChannel {
public:
    DepolarizingChannel(int d, double epsilon);

    int d() const { return d_; }
    double epsilon() const { return epsilon_; }

private:
    int d_;
    double epsilon_;
};

ComplexMatrix holevo_apply(const HolevoChannel& ch, const ComplexMatrix& sigma);
ComplexMatrix kraus_apply(const KrausChannel& ch, const ComplexMatrix& sigma);
ComplexMatrix depolarize(const DepolarizingChannel& ch, const ComplexMatrix& rho);

/// Classify sum_k F_k (resp. sum_k E_k^dagger E_k) against the identity:
/// equal within 1e-9 -> Preserving; strictly below -> SubPreserving;
/// anything else -> Invalid.
TracePreservation trace_preservation(const HolevoChannel& ch);
TracePreservation trace_preservation(const KrausChannel& ch);

/// (id_A (x) Phi)(rho): apply the channel to each dA x dA grid of B-blocks.
ComplexMatrix apply_id_tensor(const HolevoChannel& ch, const ComplexMatrix& rho, int dA);

/// Channel with pairs (|phi_k><phi_k|, p_k |conj(psi_k)><conj(psi_k)|).
/// Feeding it the unnormalized maximally entangled projector through
/// apply_id_tensor reproduces assemble(dec) exactly; the effects sum to a
/// strict fraction of the identity whenever the A marginal is not maximally
/// mixed, so the map is generally trace-decreasing.
HolevoChannel ebc_from_decomposition(const SeparableDecomposition& dec);

/// Same prepared states with effects scaled by dA, matched to the normalized
/// maximally entangled input. Trace preserving iff the A marginal is dA-times
/// a POVM normalization, i.e. maximally mixed.
HolevoChannel normalized_ebc_from_decomposition(const SeparableDecomposition& dec);

/// Pinching onto an orthonormal basis: pairs (|e_n><e_n|, |e_n><e_n|).
/// Throws IncompleteBasis / NotOrthonormal when the vectors do not form a
/// complete orthonormal set.
HolevoChannel wavepacket_reduction(const std::vector<ComplexVector>& basis);

}  // namespace qsep
