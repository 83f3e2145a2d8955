#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qsep/errors.hpp"
#include "qsep/linalg.hpp"
#include "test_helpers.hpp"

using namespace qsep;
using testing::random_hermitian;
using testing::random_matrix;
using testing::random_psd;
using testing::random_vector;

TEST_CASE("matrix construction and arithmetic") {
    CHECK_THROWS_AS(ComplexMatrix(0), BadDimension);
    ComplexMatrix a(2);
    a(0, 1) = Complex(1.0, 2.0);
    ComplexMatrix b = ComplexMatrix::identity(2);
    ComplexMatrix c = a + b;
    CHECK(c(0, 0) == Complex(1.0));
    CHECK(c(0, 1) == Complex(1.0, 2.0));
    c -= b;
    CHECK(c(0, 0) == Complex(0.0));
    const ComplexMatrix d = 2.0 * b;
    CHECK(d(1, 1) == Complex(2.0));
}

TEST_CASE("matrix product against hand computation") {
    ComplexMatrix a(2), b(2);
    a(0, 0) = 1.0;
    a(0, 1) = Complex(0.0, 1.0);
    a(1, 0) = 2.0;
    a(1, 1) = -1.0;
    b(0, 0) = 3.0;
    b(0, 1) = 1.0;
    b(1, 0) = Complex(0.0, -1.0);
    b(1, 1) = 2.0;
    const ComplexMatrix c = a * b;
    CHECK(std::abs(c(0, 0) - Complex(4.0)) < 1e-15);          // 3 + i*(-i)
    CHECK(std::abs(c(0, 1) - Complex(1.0, 2.0)) < 1e-15);     // 1 + 2i
    CHECK(std::abs(c(1, 0) - Complex(6.0, 1.0)) < 1e-15);     // 6 - (-i)
    CHECK(std::abs(c(1, 1) - Complex(0.0)) < 1e-15);          // 2 - 2
}

TEST_CASE("dagger conjugates and transposes") {
    ComplexMatrix a(2);
    a(0, 1) = Complex(1.0, 2.0);
    const ComplexMatrix d = dagger(a);
    CHECK(d(1, 0) == Complex(1.0, -2.0));
    CHECK(d(0, 1) == Complex(0.0));
}

TEST_CASE("kron layout and algebra") {
    const ComplexMatrix x = pauli(1), z = pauli(3);
    const ComplexMatrix k = kron(x, z);
    // top-right 2x2 block of sigma_x (x) sigma_z is sigma_z
    CHECK(k(0, 2) == Complex(1.0));
    CHECK(k(1, 3) == Complex(-1.0));
    CHECK(k(0, 0) == Complex(0.0));
    CHECK(k(2, 0) == Complex(1.0));
    CHECK(k(3, 1) == Complex(-1.0));

    std::mt19937_64 rng(7);
    const ComplexMatrix a = random_matrix(2, rng), b = random_matrix(3, rng);
    const ComplexMatrix c = random_matrix(2, rng), d = random_matrix(3, rng);
    // (a (x) b)(c (x) d) = ac (x) bd
    CHECK(frobenius_distance(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-12);
    CHECK(std::abs(trace(kron(a, b)) - trace(a) * trace(b)) < 1e-12);

    ComplexVector u(2), v(2);
    u[0] = 1.0;
    v[1] = Complex(0.0, 1.0);
    const ComplexVector w = kron(u, v);
    CHECK(w.dim() == 4);
    CHECK(w[1] == Complex(0.0, 1.0));
    CHECK(w[3] == Complex(0.0));
}

TEST_CASE("partial trace matches index sums at 2x3") {
    std::mt19937_64 rng(11);
    const ComplexMatrix m = random_matrix(6, rng);
    const ComplexMatrix ta = partial_trace(m, 2, 3, Subsystem::A);
    const ComplexMatrix tb = partial_trace(m, 2, 3, Subsystem::B);
    for (int j = 0; j < 3; ++j)
        for (int l = 0; l < 3; ++l) {
            Complex s = 0.0;
            for (int i = 0; i < 2; ++i) s += m(i * 3 + j, i * 3 + l);
            CHECK(std::abs(ta(j, l) - s) < 1e-14);
        }
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            Complex s = 0.0;
            for (int j = 0; j < 3; ++j) s += m(i * 3 + j, k * 3 + j);
            CHECK(std::abs(tb(i, k) - s) < 1e-14);
        }
    CHECK(std::abs(trace(ta) - trace(m)) < 1e-13);
    CHECK(std::abs(trace(tb) - trace(m)) < 1e-13);
    CHECK_THROWS_AS(partial_trace(m, 2, 2, Subsystem::A), DimensionMismatch);
}

TEST_CASE("partial transpose is an involution preserving trace and hermiticity") {
    std::mt19937_64 rng(13);
    const ComplexMatrix h = random_hermitian(6, rng);
    const ComplexMatrix pt = partial_transpose(h, 2, 3);
    CHECK(hermiticity_residual(pt) < 1e-14);
    CHECK(std::abs(trace(pt) - trace(h)) < 1e-13);
    CHECK(frobenius_distance(partial_transpose(pt, 2, 3), h) < 1e-14);
}

TEST_CASE("partial transpose of the Bell projector has eigenvalues -1/2, 1/2 x3") {
    ComplexMatrix bell(4);
    bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
    const std::vector<double> eigs = hermitian_eigenvalues(partial_transpose(bell, 2, 2));
    REQUIRE(eigs.size() == 4);
    CHECK(eigs[0] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(eigs[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(eigs[3] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("eigensolver on known spectra") {
    ComplexMatrix d3(3);
    d3(0, 0) = 3.0;
    d3(1, 1) = 1.0;
    d3(2, 2) = 2.0;
    const std::vector<double> e = hermitian_eigenvalues(d3);
    CHECK(e[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(e[2] == doctest::Approx(3.0).epsilon(1e-14));

    const std::vector<double> ex = hermitian_eigenvalues(pauli(1));
    CHECK(ex[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(ex[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("eigensolver matches the quadratic closed form at dim 2") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 50; ++t) {
        const ComplexMatrix h = random_hermitian(2, rng);
        const double a = h(0, 0).real(), d = h(1, 1).real();
        const double ob = std::abs(h(0, 1));
        const double mid = 0.5 * (a + d);
        const double rad = std::hypot(0.5 * (a - d), ob);
        const std::vector<double> e = hermitian_eigenvalues(h);
        CHECK(std::abs(e[0] - (mid - rad)) < 1e-10);
        CHECK(std::abs(e[1] - (mid + rad)) < 1e-10);
    }
}

TEST_CASE("eigensystem reconstructs the matrix with orthonormal eigenvectors") {
    std::mt19937_64 rng(19);
    for (int d : {2, 3, 5, 8, 16}) {
        const ComplexMatrix h = random_hermitian(d, rng);
        const EigenSystem es = hermitian_eigensystem(h);
        double tr = 0.0;
        for (double v : es.values) tr += v;
        CHECK(std::abs(tr - trace(h).real()) < 1e-9 * std::max(1.0, max_abs(h)));
        // V diag(v) V^dagger == h
        ComplexMatrix rec(d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                Complex s = 0.0;
                for (int k = 0; k < d; ++k)
                    s += es.vectors(r, k) * es.values[k] * std::conj(es.vectors(c, k));
                rec(r, c) = s;
            }
        CHECK(frobenius_distance(rec, h) < 1e-9 * std::max(1.0, max_abs(h)) * d);
        const ComplexMatrix vtv = dagger(es.vectors) * es.vectors;
        CHECK(frobenius_distance(vtv, ComplexMatrix::identity(d)) < 1e-11 * d);
        CHECK(std::is_sorted(es.values.begin(), es.values.end()));
    }
}

TEST_CASE("eigensolver rejects non-Hermitian input") {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;  // m(1,0) stays 0
    CHECK_THROWS_AS(hermitian_eigenvalues(m), NotHermitian);
}

TEST_CASE("psd classification") {
    CHECK(is_psd(ComplexMatrix::identity(3)));
    ComplexMatrix m(2);
    m(0, 0) = m(1, 1) = 1.0;
    m(0, 1) = m(1, 0) = 2.0;  // eigenvalues -1 and 3
    CHECK_FALSE(is_psd(m));
    CHECK(min_eigenvalue(m) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("entrywise product of PSD matrices stays PSD") {
    std::mt19937_64 rng(23);
    for (int d : {2, 3, 5, 9}) {
        for (int t = 0; t < 10; ++t) {
            const ComplexMatrix p = random_psd(d, rng), q = random_psd(d, rng);
            CHECK(min_eigenvalue(hadamard_product(p, q)) > -1e-10);
        }
    }
}

TEST_CASE("outer, inner, matvec and norms") {
    ComplexVector u(2), v(2);
    u[0] = 1.0;
    u[1] = Complex(0.0, 1.0);
    v[0] = 1.0;
    CHECK(std::abs(inner(u, v) - Complex(1.0)) < 1e-15);      // conj on the left slot
    CHECK(std::abs(inner(u, u) - Complex(2.0)) < 1e-15);
    CHECK(norm(u) == doctest::Approx(std::sqrt(2.0)));
    const ComplexMatrix p = outer(u);
    CHECK(std::abs(p(0, 1) - Complex(0.0, -1.0)) < 1e-15);    // u0 * conj(u1)
    CHECK(std::abs(p(1, 0) - Complex(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(trace(p) - Complex(2.0)) < 1e-15);
    const ComplexVector w = matvec(pauli(1), v);
    CHECK(w[0] == Complex(0.0));
    CHECK(w[1] == Complex(1.0));
}

TEST_CASE("frobenius distance") {
    const ComplexMatrix i2 = ComplexMatrix::identity(2);
    CHECK(frobenius_distance(i2, i2) == 0.0);
    ComplexMatrix z(2);
    CHECK(frobenius_distance(i2, z) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("pauli algebra and spin-axis projectors") {
    for (int i = 1; i <= 3; ++i) {
        CHECK(frobenius_distance(pauli(i) * pauli(i), ComplexMatrix::identity(2)) < 1e-15);
        const ComplexMatrix up = outer(bloch_up(i));
        const ComplexMatrix dn = outer(bloch_down(i));
        ComplexMatrix expect_up(2), expect_dn(2);
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                const Complex id = r == c ? 1.0 : 0.0;
                expect_up(r, c) = 0.5 * (id + pauli(i)(r, c));
                expect_dn(r, c) = 0.5 * (id - pauli(i)(r, c));
            }
        CHECK(frobenius_distance(up, expect_up) < 1e-15);
        CHECK(frobenius_distance(dn, expect_dn) < 1e-15);
    }
    const ComplexMatrix xy = pauli(1) * pauli(2);
    CHECK(frobenius_distance(xy, scaled(pauli(3), Complex(0.0, 1.0))) < 1e-15);
    CHECK_THROWS_AS(pauli(0), BadDimension);
}

TEST_CASE("finiteness detection") {
    ComplexMatrix m(2);
    CHECK(all_finite(m));
    m(0, 0) = std::numeric_limits<double>::infinity();
    CHECK_FALSE(all_finite(m));
    ComplexVector v(2);
    CHECK(all_finite(v));
    v[1] = Complex(0.0, std::nan(""));
    CHECK_FALSE(all_finite(v));
}
