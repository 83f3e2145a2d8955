#include "qsep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qsep {

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (dim_ != o.dim_) throw DimensionMismatch("matrix add: dims differ");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (dim_ != o.dim_) throw DimensionMismatch("matrix sub: dims differ");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& x : a_) x *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("matrix product: dims differ");
    const int n = a.dim();
    ComplexMatrix c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int da = a.dim(), db = b.dim();
    ComplexMatrix out(da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (int m = 0; m < db; ++m)
                for (int n = 0; n < db; ++n)
                    out(i * db + m, j * db + n) = aij * b(m, n);
        }
    return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
    const int da = a.dim(), db = b.dim();
    ComplexVector out(da * db);
    for (int i = 0; i < da; ++i)
        for (int m = 0; m < db; ++m) out[i * db + m] = a[i] * b[m];
    return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
    const int n = a.dim();
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = std::conj(a(j, i));
    return out;
}

ComplexMatrix transpose(const ComplexMatrix& a) {
    const int n = a.dim();
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = a(j, i);
    return out;
}

ComplexMatrix conjugate(const ComplexMatrix& a) {
    const int n = a.dim();
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = std::conj(a(i, j));
    return out;
}

ComplexVector conjugate(const ComplexVector& v) {
    ComplexVector out(v.dim());
    for (int i = 0; i < v.dim(); ++i) out[i] = std::conj(v[i]);
    return out;
}

static void check_bipartite(const ComplexMatrix& rho, int dA, int dB, const char* who) {
    if (dA < 1 || dB < 1) throw BadDimension(std::string(who) + ": subsystem dims must be >= 1");
    if (rho.dim() != dA * dB)
        throw DimensionMismatch(std::string(who) + ": dim " + std::to_string(rho.dim()) +
                                " != dA*dB = " + std::to_string(dA * dB));
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, int dA, int dB, Subsystem traced) {
    check_bipartite(rho, dA, dB, "partial_trace");
    if (traced == Subsystem::B) {
        ComplexMatrix out(dA);
        for (int i = 0; i < dA; ++i)
            for (int j = 0; j < dA; ++j) {
                Complex s{};
                for (int m = 0; m < dB; ++m) s += rho(i * dB + m, j * dB + m);
                out(i, j) = s;
            }
        return out;
    }
    ComplexMatrix out(dB);
    for (int m = 0; m < dB; ++m)
        for (int n = 0; n < dB; ++n) {
            Complex s{};
            for (int i = 0; i < dA; ++i) s += rho(i * dB + m, i * dB + n);
            out(m, n) = s;
        }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, int dA, int dB) {
    check_bipartite(rho, dA, dB, "partial_transpose");
    ComplexMatrix out(dA * dB);
    for (int i = 0; i < dA; ++i)
        for (int j = 0; j < dA; ++j)
            for (int m = 0; m < dB; ++m)
                for (int n = 0; n < dB; ++n)
                    out(i * dB + m, j * dB + n) = rho(i * dB + n, j * dB + m);
    return out;
}

ComplexMatrix hadamard_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("hadamard_product: dims differ");
    const int n = a.dim();
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = a(i, j) * b(i, j);
    return out;
}

Complex trace(const ComplexMatrix& a) {
    Complex s{};
    for (int i = 0; i < a.dim(); ++i) s += a(i, i);
    return s;
}

ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& v) {
    if (a.dim() != v.dim()) throw DimensionMismatch("matvec: dims differ");
    ComplexVector out(a.dim());
    for (int i = 0; i < a.dim(); ++i) {
        Complex s{};
        for (int j = 0; j < a.dim(); ++j) s += a(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

ComplexMatrix outer(const ComplexVector& v) {
    ComplexMatrix out(v.dim());
    for (int i = 0; i < v.dim(); ++i)
        for (int j = 0; j < v.dim(); ++j) out(i, j) = v[i] * std::conj(v[j]);
    return out;
}

Complex inner(const ComplexVector& u, const ComplexVector& v) {
    if (u.dim() != v.dim()) throw DimensionMismatch("inner: dims differ");
    Complex s{};
    for (int i = 0; i < u.dim(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

double norm(const ComplexVector& v) {
    double s = 0;
    for (int i = 0; i < v.dim(); ++i) s += std::norm(v[i]);
    return std::sqrt(s);
}

ComplexVector scaled(const ComplexVector& v, Complex s) {
    ComplexVector out(v.dim());
    for (int i = 0; i < v.dim(); ++i) out[i] = s * v[i];
    return out;
}

ComplexMatrix scaled(const ComplexMatrix& a, Complex s) {
    ComplexMatrix out(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) out(r, c) = s * a(r, c);
    return out;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("frobenius_distance: dims differ");
    double s = 0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) s += std::norm(a(i, j) - b(i, j));
    return std::sqrt(s);
}

double hermiticity_residual(const ComplexMatrix& a) {
    double r = 0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i; j < a.dim(); ++j)
            r = std::max(r, std::abs(a(i, j) - std::conj(a(j, i))));
    return r;
}

double max_abs(const ComplexMatrix& a) {
    double r = 0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) r = std::max(r, std::abs(a(i, j)));
    return r;
}

bool all_finite(const ComplexMatrix& a) {
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    return true;
}

bool all_finite(const ComplexVector& v) {
    for (int i = 0; i < v.dim(); ++i)
        if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
    return true;
}

// -- eigensolver ------------------------------------------------------------

namespace {

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0;
    for (int p = 0; p < a.dim(); ++p)
        for (int q = p + 1; q < a.dim(); ++q) s += std::norm(a(p, q));
    return std::sqrt(2 * s);
}

// One cyclic-Jacobi rotation annihilating entry (p,q) of the Hermitian
// matrix A. The tangent is the smaller root of t^2 + 2*tau*t - 1 = 0,
// computed without subtracting nearby quantities: the naive eigenvector
// form (beta, lambda - alpha) loses all accuracy once |beta| << |alpha -
// gamma| and silently breaks the similarity A = V^dagger A0 V. |t| <= 1
// keeps the rotation angle <= pi/4.
void rotate(ComplexMatrix& A, ComplexMatrix& V, int p, int q) {
    const Complex beta = A(p, q);
    const double b = std::abs(beta);
    if (b == 0.0) return;
    const double alpha = A(p, p).real();
    const double gamma = A(q, q).real();
    const Complex phase = beta / b;  // e^{i phi}
    const double tau = (alpha - gamma) / (2.0 * b);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const Complex sp = s * phase;
    const Complex sm = s * std::conj(phase);
    // Columns of the unitary: (c, sm) and (-sp, c); the first is the exact
    // eigenvector of the 2x2 block for the eigenvalue alpha + t*b.
    const int n = A.dim();
    for (int r = 0; r < n; ++r) {  // A <- A U
        const Complex ap = A(r, p), aq = A(r, q);
        A(r, p) = ap * c + aq * sm;
        A(r, q) = -ap * sp + aq * c;
    }
    for (int col = 0; col < n; ++col) {  // A <- U^dagger A
        const Complex ap = A(p, col), aq = A(q, col);
        A(p, col) = c * ap + sp * aq;
        A(q, col) = -sm * ap + c * aq;
    }
    A(p, q) = 0.0;
    A(q, p) = 0.0;
    A(p, p) = alpha + t * b;
    A(q, q) = gamma - t * b;
    for (int r = 0; r < n; ++r) {  // V <- V U
        const Complex vp = V(r, p), vq = V(r, q);
        V(r, p) = vp * c + vq * sm;
        V(r, q) = -vp * sp + vq * c;
    }
}

}  // namespace

EigenSystem hermitian_eigensystem(const ComplexMatrix& a) {
    const double asym = hermiticity_residual(a);
    if (asym > kTauHerm) throw NotHermitian(asym);
    const int n = a.dim();
    // Work on the Hermitian part so sub-tolerance asymmetry cannot drift.
    ComplexMatrix A(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    ComplexMatrix V = ComplexMatrix::identity(n);

    const double scale = std::max(1.0, max_abs(A));
    const double stop = 1e-14 * scale;
    for (int sweep = 0; sweep < 60 && offdiag_norm(A) > stop; ++sweep) {
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                if (std::abs(A(p, q)) > stop / (n * n)) rotate(A, V, p, q);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return A(i, i).real() < A(j, j).real(); });

    EigenSystem es;
    es.values.resize(n);
    es.vectors = ComplexMatrix(n);
    for (int k = 0; k < n; ++k) {
        es.values[k] = A(order[k], order[k]).real();
        for (int r = 0; r < n; ++r) es.vectors(r, k) = V(r, order[k]);
    }
    return es;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
    return hermitian_eigensystem(a).values;
}

double min_eigenvalue(const ComplexMatrix& a) {
    return hermitian_eigenvalues(a).front();
}

bool is_psd(const ComplexMatrix& a) {
    return min_eigenvalue(a) >= -kTauPsd;
}

ComplexMatrix pauli(int i) {
    ComplexMatrix m(2);
    switch (i) {
        case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
        case 2: m(0, 1) = Complex(0, -1); m(1, 0) = Complex(0, 1); break;
        case 3: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
        default: throw BadDimension("pauli index must be 1, 2 or 3");
    }
    return m;
}

ComplexVector bloch_up(int i) {
    ComplexVector v(2);
    const double s = 1.0 / std::sqrt(2.0);
    switch (i) {
        case 1: v[0] = s; v[1] = s; break;
        case 2: v[0] = s; v[1] = Complex(0, s); break;
        case 3: v[0] = 1.0; break;
        default: throw BadDimension("pauli index must be 1, 2 or 3");
    }
    return v;
}

ComplexVector bloch_down(int i) {
    ComplexVector v(2);
    const double s = 1.0 / std::sqrt(2.0);
    switch (i) {
        case 1: v[0] = s; v[1] = -s; break;
        case 2: v[0] = s; v[1] = Complex(0, -s); break;
        case 3: v[1] = 1.0; break;
        default: throw BadDimension("pauli index must be 1, 2 or 3");
    }
    return v;
}

}  // namespace qsep
