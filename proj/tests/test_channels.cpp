#include <doctest.h>

#include <cmath>

#include "qsep/channels.hpp"
#include "qsep/errors.hpp"
#include "test_helpers.hpp"

using namespace qsep;

namespace {

PureState basis_state(int d, int i) {
    ComplexVector v(d);
    v[i] = 1.0;
    return PureState(v, true);
}

ComplexMatrix projector(int d, int i) {
    ComplexMatrix m(d);
    m(i, i) = 1.0;
    return m;
}

}  // namespace

TEST_CASE("holevo apply is prepare times measured weight") {
    // single pair: R = |1><1| on C^3, F = |0><0| on C^2
    HolevoChannel ch(2, 3, {{projector(3, 1), projector(2, 0)}});
    ComplexMatrix sigma(2);
    sigma(0, 0) = 0.7;
    sigma(1, 1) = 0.3;
    const ComplexMatrix out = holevo_apply(ch, sigma);
    CHECK(out.dim() == 3);
    CHECK(std::abs(out(1, 1) - Complex(0.7)) < 1e-15);
    CHECK(std::abs(trace(out) - Complex(0.7)) < 1e-15);
    CHECK_THROWS_AS(holevo_apply(ch, ComplexMatrix(3)), DimensionMismatch);
}

TEST_CASE("holevo construction validates prepared states and effects") {
    ComplexMatrix bad_r(2);
    bad_r(0, 0) = 2.0;  // trace 2
    CHECK_THROWS_WITH_AS(HolevoChannel(2, 2, {{bad_r, projector(2, 0)}}),
                         doctest::Contains("prepared-state-trace"), InvariantViolation);
    ComplexMatrix neg(2);
    neg(0, 0) = 1.0;
    neg(1, 1) = -0.25;
    CHECK_THROWS_WITH_AS(HolevoChannel(2, 2, {{projector(2, 0), neg}}),
                         doctest::Contains("effect-positivity"), InvariantViolation);
    // a super-complete effect set is constructible; classification flags it
    const HolevoChannel over(2, 2,
                             {{projector(2, 0), scaled(ComplexMatrix::identity(2), 2.0)}});
    CHECK(trace_preservation(over) == TracePreservation::Invalid);
}

TEST_CASE("kraus apply on square and rectangular operators") {
    // identity channel
    KrausChannel id(2, 2, {KrausOperator::from_square(ComplexMatrix::identity(2))});
    std::mt19937_64 rng(3);
    const ComplexMatrix sigma = testing::random_hermitian(2, rng);
    CHECK(frobenius_distance(kraus_apply(id, sigma), sigma) < 1e-15);
    CHECK(trace_preservation(id) == TracePreservation::Preserving);

    // dephasing kills off-diagonal terms
    KrausChannel deph(2, 2, {KrausOperator::from_square(projector(2, 0)),
                             KrausOperator::from_square(projector(2, 1))});
    const ComplexMatrix out = kraus_apply(deph, sigma);
    CHECK(out(0, 1) == Complex(0.0));
    CHECK(out(1, 0) == Complex(0.0));
    CHECK(std::abs(out(0, 0) - sigma(0, 0)) < 1e-15);
    CHECK(trace_preservation(deph) == TracePreservation::Preserving);

    // isometric embedding of C^2 into C^3
    KrausOperator v(3, 2);
    v(0, 0) = 1.0;
    v(2, 1) = 1.0;
    KrausChannel emb(2, 3, {v});
    const ComplexMatrix up = kraus_apply(emb, sigma);
    CHECK(up.dim() == 3);
    CHECK(std::abs(up(0, 0) - sigma(0, 0)) < 1e-15);
    CHECK(std::abs(up(0, 2) - sigma(0, 1)) < 1e-15);
    CHECK(up(1, 1) == Complex(0.0));
    CHECK(trace_preservation(emb) == TracePreservation::Preserving);

    // scaled identity overshoots completeness
    KrausChannel twice(2, 2,
                       {KrausOperator::from_square(scaled(ComplexMatrix::identity(2), 2.0))});
    CHECK(trace_preservation(twice) == TracePreservation::Invalid);
    // half identity undershoots
    KrausChannel half(2, 2,
                      {KrausOperator::from_square(scaled(ComplexMatrix::identity(2), 0.5))});
    CHECK(trace_preservation(half) == TracePreservation::SubPreserving);

    CHECK_THROWS_AS(KrausChannel(2, 2, {v}), DimensionMismatch);
    CHECK_THROWS_AS(KrausChannel(2, 2, {}), InvariantViolation);
}

TEST_CASE("depolarizing channel") {
    CHECK_THROWS_AS(DepolarizingChannel(2, -0.1), InvariantViolation);
    CHECK_THROWS_AS(DepolarizingChannel(2, 1.1), InvariantViolation);
    CHECK_THROWS_AS(DepolarizingChannel(0, 0.5), BadDimension);

    std::mt19937_64 rng(5);
    const ComplexMatrix rho = random_density(3, rng);
    const ComplexMatrix flat = depolarize(DepolarizingChannel(3, 0.0), rho);
    CHECK(frobenius_distance(flat, scaled(ComplexMatrix::identity(3), 1.0 / 3.0)) < 1e-14);
    const ComplexMatrix same = depolarize(DepolarizingChannel(3, 1.0), rho);
    CHECK(frobenius_distance(same, rho) < 1e-15);
    // traceless inputs are simply scaled
    ComplexMatrix tl(3);
    tl(0, 1) = 1.0;
    tl(1, 0) = 1.0;
    const ComplexMatrix scaled_tl = depolarize(DepolarizingChannel(3, 0.4), tl);
    CHECK(frobenius_distance(scaled_tl, scaled(tl, 0.4)) < 1e-15);
}

TEST_CASE("channel from a decomposition reconstructs the state") {
    std::mt19937_64 rng(7);
    auto [dec, rho] = random_separable(2, 3, 4, rng);
    const HolevoChannel ch = ebc_from_decomposition(dec);
    CHECK(ch.din() == 2);
    CHECK(ch.dout() == 3);
    const ComplexMatrix in = outer(maximally_entangled(2, false).vector());
    CHECK(frobenius_distance(apply_id_tensor(ch, in, 2), rho.matrix()) < 1e-12);
    CHECK(trace_preservation(ch) == TracePreservation::SubPreserving);

    const HolevoChannel chn = normalized_ebc_from_decomposition(dec);
    const ComplexMatrix inn = outer(maximally_entangled(2, true).vector());
    CHECK(frobenius_distance(apply_id_tensor(chn, inn, 2), rho.matrix()) < 1e-12);
}

TEST_CASE("single-term channel halves the entangled input weight") {
    const SeparableDecomposition dec(
        2, 2, {{1.0, basis_state(2, 0), basis_state(2, 0)}});
    const HolevoChannel ch = ebc_from_decomposition(dec);
    const ComplexMatrix out =
        apply_id_tensor(ch, outer(maximally_entangled(2, true).vector()), 2);
    ComplexMatrix expect(4);
    expect(0, 0) = 0.5;
    CHECK(frobenius_distance(out, expect) < 1e-15);

    // scaling by dA restores a unit-trace output but the effects overshoot
    const HolevoChannel chn = normalized_ebc_from_decomposition(dec);
    const ComplexMatrix outn =
        apply_id_tensor(chn, outer(maximally_entangled(2, true).vector()), 2);
    CHECK(std::abs(trace(outn) - Complex(1.0)) < 1e-14);
    CHECK(trace_preservation(chn) == TracePreservation::Invalid);
}

TEST_CASE("scaled channel of a maximally mixed marginal is trace preserving") {
    std::vector<DecompositionTerm> terms;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            terms.push_back({0.25, basis_state(2, i), basis_state(2, j)});
    const HolevoChannel ch =
        normalized_ebc_from_decomposition(SeparableDecomposition(2, 2, terms));
    CHECK(trace_preservation(ch) == TracePreservation::Preserving);
}

TEST_CASE("wavepacket reduction validates and pinches") {
    std::vector<ComplexVector> bad = {ComplexVector(2), ComplexVector(2)};
    bad[0][0] = 1.0;
    bad[1][0] = 1.0;  // duplicate direction
    CHECK_THROWS_AS(wavepacket_reduction(bad), NotOrthonormal);

    std::vector<ComplexVector> incomplete = {ComplexVector(3)};
    incomplete[0][0] = 1.0;
    CHECK_THROWS_AS(wavepacket_reduction(incomplete), IncompleteBasis);

    std::vector<ComplexVector> comp(2, ComplexVector(2));
    comp[0][0] = 1.0;
    comp[1][1] = 1.0;
    const HolevoChannel pinch = wavepacket_reduction(comp);
    CHECK(trace_preservation(pinch) == TracePreservation::Preserving);
    std::mt19937_64 rng(9);
    const ComplexMatrix sigma = testing::random_hermitian(2, rng);
    const ComplexMatrix out = holevo_apply(pinch, sigma);
    CHECK(out(0, 1) == Complex(0.0));
    CHECK(std::abs(out(0, 0) - sigma(0, 0)) < 1e-15);
    // idempotent
    CHECK(frobenius_distance(holevo_apply(pinch, out), out) < 1e-15);
}

TEST_CASE("apply_id_tensor maps blocks and checks dimensions") {
    std::vector<ComplexVector> comp(2, ComplexVector(2));
    comp[0][0] = 1.0;
    comp[1][1] = 1.0;
    const HolevoChannel pinch = wavepacket_reduction(comp);
    const ComplexMatrix bell = outer(maximally_entangled(2, true).vector());
    const ComplexMatrix out = apply_id_tensor(pinch, bell, 2);
    // pinching the B side of the Bell projector leaves the classical mixture
    ComplexMatrix expect(4);
    expect(0, 0) = 0.5;
    expect(3, 3) = 0.5;
    CHECK(frobenius_distance(out, expect) < 1e-15);
    CHECK_THROWS_AS(apply_id_tensor(pinch, ComplexMatrix(6), 2), DimensionMismatch);
}
