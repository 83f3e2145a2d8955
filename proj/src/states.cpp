#include "qsep/states.hpp"

#include <cmath>
#include <numeric>

#include "qsep/errors.hpp"

namespace qsep {

PureState::PureState(ComplexVector v, bool normalized)
    : vector_(std::move(v)), normalized_(normalized) {
    if (!all_finite(vector_)) throw InvariantViolation("finiteness", 0.0);
    if (normalized_) {
        const double r = std::abs(norm(vector_) - 1.0);
        if (r > 1e-9) throw NotNormalized("vector norm deviates from 1 by " + std::to_string(r));
    }
}

BipartiteState::BipartiteState(int dA, int dB, ComplexMatrix m, bool normalized)
    : dA_(dA), dB_(dB), matrix_(std::move(m)), normalized_(normalized) {
    if (dA_ < 1 || dB_ < 1) throw BadDimension("subsystem dimensions must be positive");
    if (matrix_.dim() != dA_ * dB_)
        throw DimensionMismatch("matrix dimension " + std::to_string(matrix_.dim()) +
                                " != dA*dB = " + std::to_string(dA_ * dB_));
    if (!all_finite(matrix_)) throw InvariantViolation("finiteness", 0.0);
    const double h = hermiticity_residual(matrix_);
    if (h > kTauHerm) throw InvariantViolation("hermiticity", h);
    const double lo = min_eigenvalue(matrix_);
    if (lo < -kTauPsd) throw InvariantViolation("positivity", -lo);
    if (normalized_) {
        const double t = std::abs(trace(matrix_).real() - 1.0);
        if (t > 1e-9) throw InvariantViolation("unit-trace", t);
    }
}

SeparableDecomposition::SeparableDecomposition(int dA, int dB,
                                               std::vector<DecompositionTerm> terms)
    : dA_(dA), dB_(dB), terms_(std::move(terms)) {
    if (dA_ < 1 || dB_ < 1) throw BadDimension("subsystem dimensions must be positive");
    if (terms_.empty()) throw InvariantViolation("nonempty-terms", 0.0);
    double sum = 0.0;
    for (const auto& t : terms_) {
        if (t.psi.dim() != dA_)
            throw DimensionMismatch("A factor has dimension " + std::to_string(t.psi.dim()));
        if (t.phi.dim() != dB_)
            throw DimensionMismatch("B factor has dimension " + std::to_string(t.phi.dim()));
        if (!t.psi.normalized() || !t.phi.normalized())
            throw InvariantViolation("factor-normalization", 0.0);
        if (!(t.p > 0.0)) throw InvariantViolation("weight-positivity", t.p);
        sum += t.p;
    }
    const double r = std::abs(sum - 1.0);
    if (r > 1e-9) throw InvariantViolation("weight-sum", r);
}

BipartiteState assemble(const SeparableDecomposition& dec) {
    const int d = dec.dA() * dec.dB();
    ComplexMatrix rho(d);
    for (const auto& t : dec.terms()) {
        const ComplexVector prod = kron(t.psi.vector(), t.phi.vector());
        const ComplexMatrix proj = outer(prod);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) rho(r, c) += t.p * proj(r, c);
    }
    return BipartiteState(dec.dA(), dec.dB(), rho, true);
}

PureState maximally_entangled(int d, bool normalized) {
    if (d < 2) throw BadDimension("need d >= 2");
    ComplexVector v(d * d);
    const double amp = normalized ? 1.0 / std::sqrt(static_cast<double>(d)) : 1.0;
    for (int i = 0; i < d; ++i) v[i * d + i] = amp;
    return PureState(v, normalized);
}

double entanglement_entropy(const PureState& psi, int dA, int dB) {
    if (psi.dim() != dA * dB)
        throw DimensionMismatch("vector dimension " + std::to_string(psi.dim()) +
                                " != dA*dB = " + std::to_string(dA * dB));
    if (!psi.normalized()) throw NotNormalized("entropy requires a normalized state");
    const ComplexVector& v = psi.vector();
    ComplexMatrix rhoA(dA);
    for (int i = 0; i < dA; ++i)
        for (int k = 0; k < dA; ++k) {
            Complex s = 0.0;
            for (int j = 0; j < dB; ++j) s += v[i * dB + j] * std::conj(v[k * dB + j]);
            rhoA(i, k) = s;
        }
    const std::vector<double> eigs = hermitian_eigenvalues(rhoA);
    double h = 0.0;
    for (double lam : eigs) {
        if (lam < 1e-12) continue;
        h -= lam * std::log2(lam);
    }
    return h < 0.0 ? 0.0 : h;
}

bool is_maximally_entangled(const PureState& psi, int dA, int dB) {
    if (dB < dA) throw DimensionMismatch("requires dB >= dA");
    const double e = entanglement_entropy(psi, dA, dB);
    return std::abs(e - std::log2(static_cast<double>(dA))) <= 1e-8;
}

PureState random_pure(int d, std::mt19937_64& rng) {
    if (d < 1) throw BadDimension("need d >= 1");
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexVector v(d);
    for (int i = 0; i < d; ++i) v[i] = Complex(gauss(rng), gauss(rng));
    const double n = norm(v);
    for (int i = 0; i < d; ++i) v[i] /= n;
    return PureState(v, true);
}

std::pair<SeparableDecomposition, BipartiteState>
random_separable(int dA, int dB, int k_terms, std::mt19937_64& rng) {
    if (k_terms < 1) throw BadDimension("need k_terms >= 1");
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> w(static_cast<size_t>(k_terms));
    double sum = 0.0;
    for (double& x : w) {
        x = expo(rng) + 1e-12;
        sum += x;
    }
    std::vector<DecompositionTerm> terms;
    terms.reserve(w.size());
    for (double x : w)
        terms.push_back({x / sum, random_pure(dA, rng), random_pure(dB, rng)});
    SeparableDecomposition dec(dA, dB, std::move(terms));
    BipartiteState rho = assemble(dec);
    return {std::move(dec), std::move(rho)};
}

ComplexMatrix random_density(int d, std::mt19937_64& rng) {
    if (d < 1) throw BadDimension("need d >= 1");
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) g(r, c) = Complex(gauss(rng), gauss(rng));
    ComplexMatrix w = g * dagger(g);
    // Round half the asymmetry away so downstream hermiticity checks see 0.
    for (int r = 0; r < d; ++r)
        for (int c = r; c < d; ++c) {
            const Complex m = 0.5 * (w(r, c) + std::conj(w(c, r)));
            w(r, c) = m;
            w(c, r) = std::conj(m);
        }
    const double tr = trace(w).real();
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) w(r, c) /= tr;
    return w;
}

}  // namespace qsep
