#include "qsep/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qsep/errors.hpp"

namespace qsep {

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Separable: return "separable";
        case Outcome::Entangled: return "entangled";
        case Outcome::Inconclusive: return "inconclusive";
    }
    return "?";
}

BlockView blocks_of(const BipartiteState& rho) {
    const int dA = rho.dA(), dB = rho.dB();
    BlockView bv;
    bv.dA = dA;
    bv.dB = dB;
    bv.blocks.assign(static_cast<size_t>(dA) * dA, ComplexMatrix(dB));
    const ComplexMatrix& m = rho.matrix();
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j) {
            ComplexMatrix& b = bv.block(i, j);
            for (int r = 0; r < dB; ++r)
                for (int c = 0; c < dB; ++c) b(r, c) = m(i * dB + r, j * dB + c);
        }
    return bv;
}

ComplexMatrix reassemble(const BlockView& bv) {
    ComplexMatrix m(bv.dA * bv.dB);
    for (int i = 0; i < bv.dA; ++i)
        for (int j = 0; j < bv.dA; ++j) {
            const ComplexMatrix& b = bv.block(i, j);
            for (int r = 0; r < bv.dB; ++r)
                for (int c = 0; c < bv.dB; ++c) m(i * bv.dB + r, j * bv.dB + c) = b(r, c);
        }
    return m;
}

std::vector<ComplexVector> computational_basis(int d) {
    if (d < 1) throw BadDimension("need d >= 1");
    std::vector<ComplexVector> basis;
    basis.reserve(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        ComplexVector v(d);
        v[i] = 1.0;
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<ComplexVector> qutrit_reduction_basis() {
    const double s2 = std::sqrt(2.0);
    std::vector<ComplexVector> basis(3, ComplexVector(3));
    basis[0][0] = s2 / 2.0;
    basis[0][1] = -0.5;
    basis[0][2] = 0.5;
    basis[1][0] = s2 / 2.0;
    basis[1][1] = 0.5;
    basis[1][2] = -0.5;
    basis[2][0] = 0.0;
    basis[2][1] = 1.0 / s2;
    basis[2][2] = 1.0 / s2;
    return basis;
}

SeparableDecomposition pinching_decomposition(const BipartiteState& rho,
                                              const std::vector<ComplexVector>& basis) {
    if (!rho.normalized())
        throw NotNormalized("pinching certificate requires a normalized state");
    const int dA = rho.dA(), dB = rho.dB();
    if (static_cast<int>(basis.size()) != dB)
        throw IncompleteBasis("basis size does not match the B dimension");
    const ComplexMatrix& m = rho.matrix();
    std::vector<DecompositionTerm> terms;
    for (int n = 0; n < dB; ++n) {
        const ComplexVector& e = basis[n];
        if (e.dim() != dB) throw DimensionMismatch("basis vector has wrong dimension");
        ComplexMatrix comp(dA);  // comp[i,k] = <e_n| rho^{ik} |e_n>
        for (int i = 0; i < dA; ++i)
            for (int k = 0; k < dA; ++k) {
                Complex s = 0.0;
                for (int r = 0; r < dB; ++r)
                    for (int c = 0; c < dB; ++c)
                        s += std::conj(e[r]) * m(i * dB + r, k * dB + c) * e[c];
                comp(i, k) = s;
            }
        const EigenSystem es = hermitian_eigensystem(comp);
        for (int k = 0; k < dA; ++k) {
            if (es.values[k] <= 1e-12) continue;
            ComplexVector v(dA);
            for (int r = 0; r < dA; ++r) v[r] = es.vectors(r, k);
            terms.push_back({es.values[k], PureState(v, true), PureState(e, true)});
        }
    }
    return SeparableDecomposition(dA, dB, std::move(terms));
}

Verdict corollary1_zero_pattern(const BipartiteState& rho) {
    const int dA = rho.dA(), dB = rho.dB();
    const ComplexMatrix& m = rho.matrix();
    double worst = 0.0;
    for (int i = 0; i < dA; ++i)
        for (int k = 0; k < dA; ++k)
            for (int j = 0; j < dB; ++j)
                for (int l = 0; l < dB; ++l)
                    if (j != l) worst = std::max(worst, std::abs(m(i * dB + j, k * dB + l)));
    Verdict v;
    v.criterion = "corollary1";
    v.diagnostics.emplace_back("max_pattern_violation", worst);
    if (worst <= 1e-10) {
        v.outcome = Outcome::Separable;
        v.certificate = pinching_decomposition(rho, computational_basis(dB));
        v.details = "every B block is diagonal, so the state is a mixture of A operators "
                    "against the B computational basis";
    } else {
        v.outcome = Outcome::Inconclusive;
        v.details = "off-diagonal B coherence present; the zero pattern does not apply";
    }
    return v;
}

BasisReduction basis_reduction(const BipartiteState& rho,
                               const std::vector<ComplexVector>& basis) {
    const HolevoChannel pinch = wavepacket_reduction(basis);
    const ComplexMatrix reduced_m = apply_id_tensor(pinch, rho.matrix(), rho.dA());
    BipartiteState reduced(rho.dA(), rho.dB(), reduced_m, rho.normalized());
    const double resid = frobenius_distance(rho.matrix(), reduced_m);
    Verdict v;
    v.criterion = "basis-reduction";
    v.diagnostics.emplace_back("fixed_point_residual", resid);
    if (resid <= 1e-10) {
        v.outcome = Outcome::Separable;
        if (rho.normalized()) v.certificate = pinching_decomposition(reduced, basis);
        v.details = "state is a fixed point of the pinching, hence equal to its own "
                    "separable reduction";
    } else {
        v.outcome = Outcome::Inconclusive;
        v.details = "state is not a fixed point of the pinching; only the reduced state "
                    "is known to be separable";
    }
    return {std::move(reduced), std::move(v)};
}

QutritReduction qutrit_closed_form(const BipartiteState& rho) {
    if (rho.dA() != 3 || rho.dB() != 3)
        throw DimensionMismatch("closed form is specific to 3 x 3 systems");
    static const std::vector<ComplexVector> basis = qutrit_reduction_basis();
    static const HolevoChannel pinch = wavepacket_reduction(basis);

    QutritReduction out{BipartiteState(3, 3, apply_id_tensor(pinch, rho.matrix(), 3),
                                       rho.normalized()),
                        ComplexMatrix(9), ComplexMatrix(9), 0.0};

    const BlockView bv = blocks_of(rho);
    BlockView tab;
    tab.dA = 3;
    tab.dB = 3;
    tab.blocks.assign(9, ComplexMatrix(3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const ComplexMatrix& B = bv.block(i, j);
            ComplexMatrix& T = tab.block(i, j);
            const Complex odd = 0.25 * (B(0, 1) - B(0, 2) + B(1, 0) - B(2, 0));
            T(0, 0) = 0.25 * (2.0 * B(0, 0) + B(1, 1) - B(1, 2) - B(2, 1) + B(2, 2));
            T(0, 1) = odd;
            T(0, 2) = -odd;
            T(1, 0) = odd;
            T(2, 0) = -odd;
            T(1, 1) = 0.125 * (2.0 * B(0, 0) + 3.0 * B(1, 1) + B(1, 2) + B(2, 1) +
                               3.0 * B(2, 2));
            T(2, 2) = T(1, 1);
            // As printed, the (1,2)/(2,1) entries stop at the B(2,1) term; the
            // exact pinching would add B(2,2)/8 to both.
            T(1, 2) = 0.125 * (-2.0 * B(0, 0) + B(1, 1) + 3.0 * B(1, 2) + 3.0 * B(2, 1));
            T(2, 1) = T(1, 2);
        }
    out.tabulated_route = reassemble(tab);
    out.delta = out.channel_route.matrix() - out.tabulated_route;
    out.max_delta = max_abs(out.delta);
    return out;
}

Verdict theorem3_block_psd(const BipartiteState& rho) {
    const BlockView bv = blocks_of(rho);
    Verdict v;
    v.criterion = "blocks-psd";
    double worst_asym = 0.0;
    double min_eig = 0.0;
    bool first = true;
    int bad_i = -1, bad_j = -1;
    std::string why;
    for (int i = 0; i < bv.dA && why.empty(); ++i)
        for (int j = 0; j < bv.dA && why.empty(); ++j) {
            const ComplexMatrix& b = bv.block(i, j);
            const double h = hermiticity_residual(b);
            worst_asym = std::max(worst_asym, h);
            if (h > kTauHerm) {
                bad_i = i;
                bad_j = j;
                why = "block is not Hermitian";
                continue;
            }
            const double lo = min_eigenvalue(b);
            if (first || lo < min_eig) {
                min_eig = lo;
                first = false;
            }
            if (lo < -kTauPsd) {
                bad_i = i;
                bad_j = j;
                why = "block has a negative eigenvalue";
            }
        }
    v.diagnostics.emplace_back("max_block_asymmetry", worst_asym);
    if (!first) v.diagnostics.emplace_back("min_block_eigenvalue", min_eig);
    if (why.empty()) {
        v.outcome = Outcome::Separable;
        v.details = "all B blocks are positive semidefinite; entrywise products with any "
                    "density matrix stay positive, which forces separability";
    } else {
        v.outcome = Outcome::Inconclusive;
        std::ostringstream os;
        os << why << " at block (" << bad_i << "," << bad_j << ")";
        v.details = os.str();
    }
    return v;
}

Verdict corollary2_sampled(const BipartiteState& rho, int trials, std::mt19937_64& rng) {
    if (trials < 1) throw BadSpec("need trials >= 1");
    const BlockView bv = blocks_of(rho);
    Verdict v;
    v.criterion = "corollary2";
    double worst_real = 0.0;
    double worst_imag = 0.0;
    for (int t = 0; t < trials; ++t) {
        const ComplexMatrix sigma = random_density(rho.dB(), rng);
        for (int i = 0; i < bv.dA; ++i)
            for (int j = 0; j < bv.dA; ++j) {
                const ComplexMatrix& b = bv.block(i, j);
                Complex s = 0.0;
                for (int r = 0; r < bv.dB; ++r)
                    for (int c = 0; c < bv.dB; ++c) s += b(r, c) * sigma(r, c);
                worst_real = std::min(worst_real, s.real());
                worst_imag = std::max(worst_imag, std::abs(s.imag()));
                if (s.real() < -1e-9 || std::abs(s.imag()) > 1e-9) {
                    v.outcome = Outcome::Inconclusive;
                    std::ostringstream os;
                    os << "entrywise pairing with a sampled density matrix came out "
                       << s.real() << (s.imag() < 0 ? " - " : " + ")
                       << std::abs(s.imag()) << "i at block (" << i << "," << j
                       << "), trial " << t;
                    v.details = os.str();
                    v.diagnostics.emplace_back("worst_real", worst_real);
                    v.diagnostics.emplace_back("worst_imag", worst_imag);
                    v.diagnostics.emplace_back("trials_run", static_cast<double>(t + 1));
                    return v;
                }
            }
    }
    v.outcome = Outcome::Separable;
    std::ostringstream os;
    os << "entrywise pairings with " << trials
       << " sampled density matrices all came out real nonnegative; randomized "
          "evidence, not a proof";
    v.details = os.str();
    v.diagnostics.emplace_back("worst_real", worst_real);
    v.diagnostics.emplace_back("worst_imag", worst_imag);
    v.diagnostics.emplace_back("trials_run", static_cast<double>(trials));
    return v;
}

Verdict ppt_check(const BipartiteState& rho) {
    const ComplexMatrix pt = partial_transpose(rho.matrix(), rho.dA(), rho.dB());
    const double lo = min_eigenvalue(pt);
    Verdict v;
    v.criterion = "ppt";
    v.diagnostics.emplace_back("pt_min_eigenvalue", lo);
    if (lo < -kTauPsd) {
        v.outcome = Outcome::Entangled;
        std::ostringstream os;
        os << "partial transpose has eigenvalue " << lo << " < 0";
        v.details = os.str();
    } else {
        v.outcome = Outcome::Inconclusive;
        v.details = "partial transpose is positive semidefinite; this check alone "
                    "cannot certify separability";
    }
    return v;
}

namespace {

ComplexMatrix axis_projector(int axis, int sign) {
    const ComplexVector v = sign > 0 ? bloch_up(axis) : bloch_down(axis);
    return outer(v);
}

}  // namespace

BraunsteinCoefficients braunstein_coefficients(const BipartiteState& rho) {
    if (rho.dA() != 2 || rho.dB() != 2)
        throw DimensionMismatch("Bloch coefficients are specific to 2 x 2 systems");
    const ComplexMatrix& m = rho.matrix();
    const ComplexMatrix id2 = ComplexMatrix::identity(2);
    BraunsteinCoefficients co;
    for (int i = 0; i < 3; ++i) {
        co.bloch_a[i] = trace(m * kron(pauli(i + 1), id2)).real();
        co.bloch_b[i] = trace(m * kron(id2, pauli(i + 1))).real();
        for (int j = 0; j < 3; ++j)
            co.corr[i][j] = trace(m * kron(pauli(i + 1), pauli(j + 1))).real();
    }
    return co;
}

ComplexMatrix braunstein_assemble(const BraunsteinCoefficients& co) {
    const double w = 1.0 / 3.0;
    ComplexMatrix acc(4);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int s = 0; s < 2; ++s)
                for (int t = 0; t < 2; ++t) {
                    const double sa = s == 0 ? 1.0 : -1.0;
                    const double tb = t == 0 ? 1.0 : -1.0;
                    const double weight = 0.25 * (w * w + sa * w * co.bloch_a[i] +
                                                  tb * w * co.bloch_b[j] +
                                                  sa * tb * co.corr[i][j]);
                    const ComplexMatrix proj =
                        kron(axis_projector(i + 1, s == 0 ? 1 : -1),
                             axis_projector(j + 1, t == 0 ? 1 : -1));
                    for (int r = 0; r < 4; ++r)
                        for (int c = 0; c < 4; ++c) acc(r, c) += weight * proj(r, c);
                }
    return acc;
}

QCoefficients depolarizing_q_coefficients(const BraunsteinCoefficients& co,
                                          double epsilon) {
    const double w = 1.0 / 3.0;
    QCoefficients q{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const double a = co.bloch_a[i], b = co.bloch_b[j], c = co.corr[i][j];
            q[0][i][j] = 0.25 * (w * w + epsilon * (w * a + w * b + c));
            q[1][i][j] = 0.25 * (w * w + epsilon * (-w * a + w * b - c));
            q[2][i][j] = 0.25 * (w * w + epsilon * (w * a - w * b - c));
            q[3][i][j] = 0.25 * (w * w + epsilon * (-w * a - w * b + c));
        }
    return q;
}

double min_q(const QCoefficients& q) {
    double lo = q[0][0][0];
    for (const auto& plane : q)
        for (const auto& row : plane)
            for (double x : row) lo = std::min(lo, x);
    return lo;
}

double total_q(const QCoefficients& q) {
    double s = 0.0;
    for (const auto& plane : q)
        for (const auto& row : plane)
            for (double x : row) s += x;
    return s;
}

Verdict depolarizing_two_qubit_check(const BipartiteState& rho, double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0))
        throw InvariantViolation("epsilon-range", epsilon);
    const BraunsteinCoefficients co = braunstein_coefficients(rho);
    const QCoefficients q = depolarizing_q_coefficients(co, epsilon);
    const double lo = min_q(q);
    Verdict v;
    v.criterion = "depolarizing-2q";
    v.diagnostics.emplace_back("min_q", lo);
    v.diagnostics.emplace_back("total_q", total_q(q));
    v.diagnostics.emplace_back("epsilon", epsilon);
    if (lo >= -1e-12) {
        std::vector<DecompositionTerm> terms;
        for (int n = 0; n < 4; ++n) {
            const int sa = (n == 0 || n == 2) ? 1 : -1;
            const int tb = (n == 0 || n == 1) ? 1 : -1;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    if (q[n][i][j] <= 1e-15) continue;
                    terms.push_back({q[n][i][j],
                                     PureState(sa > 0 ? bloch_up(i + 1) : bloch_down(i + 1),
                                               true),
                                     PureState(tb > 0 ? bloch_up(j + 1) : bloch_down(j + 1),
                                               true)});
                }
        }
        v.outcome = Outcome::Separable;
        v.certificate = SeparableDecomposition(2, 2, std::move(terms));
        v.details = "all 36 spin-projector weights are nonnegative at this noise level; "
                    "the certificate decomposes the depolarized state, not the input";
    } else {
        v.outcome = Outcome::Inconclusive;
        v.details = "a spin-projector weight is negative at this noise level; this "
                    "expansion cannot certify the depolarized state";
    }
    return v;
}

EbThreshold depolarizing_isotropic_threshold(int d, double epsilon) {
    if (d < 2) throw BadDimension("need d >= 2");
    return epsilon <= 1.0 / (d + 1.0) + 1e-12 ? EbThreshold::EB : EbThreshold::NotEB;
}

}  // namespace qsep
