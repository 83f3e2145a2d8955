#pragma once

#include <complex>
#include <vector>

#include "qsep/errors.hpp"

namespace qsep {

using Complex = std::complex<double>;

// Tolerances shared across the toolkit (double precision, dims <= ~64).
inline constexpr double kTauHerm = 1e-9;  // max-norm asymmetry
inline constexpr double kTauPsd = 1e-9;   // eigenvalue floor
inline constexpr double kTauEig = 1e-9;   // eigenvalue-sum vs trace

/// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim) : dim_(dim), a_(check_dim(dim)) {}

    static ComplexMatrix identity(int dim);

    int dim() const { return dim_; }

    Complex& operator()(int r, int c) { return a_[static_cast<size_t>(r) * dim_ + c]; }
    const Complex& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * dim_ + c]; }

    const std::vector<Complex>& data() const { return a_; }

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(Complex s);

private:
    static size_t check_dim(int dim) {
        if (dim < 1) throw BadDimension("matrix dim must be >= 1, got " + std::to_string(dim));
        return static_cast<size_t>(dim) * dim;
    }
    int dim_ = 0;
    std::vector<Complex> a_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);  // matrix product

/// Dense complex vector.
class ComplexVector {
public:
    ComplexVector() = default;
    explicit ComplexVector(int dim) : dim_(dim), a_(check_dim(dim)) {}

    int dim() const { return dim_; }
    Complex& operator[](int i) { return a_[static_cast<size_t>(i)]; }
    const Complex& operator[](int i) const { return a_[static_cast<size_t>(i)]; }

private:
    static size_t check_dim(int dim) {
        if (dim < 1) throw BadDimension("vector dim must be >= 1, got " + std::to_string(dim));
        return static_cast<size_t>(dim);
    }
    int dim_ = 0;
    std::vector<Complex> a_;
};

enum class Subsystem { A, B };

// -- algebraic primitives ---------------------------------------------------

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);
ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);
ComplexMatrix conjugate(const ComplexMatrix& a);
ComplexVector conjugate(const ComplexVector& v);

ComplexMatrix partial_trace(const ComplexMatrix& rho, int dA, int dB, Subsystem traced);
ComplexMatrix partial_transpose(const ComplexMatrix& rho, int dA, int dB);
ComplexMatrix hadamard_product(const ComplexMatrix& a, const ComplexMatrix& b);

Complex trace(const ComplexMatrix& a);
ComplexVector matvec(const ComplexMatrix& a, const ComplexVector& v);
ComplexMatrix outer(const ComplexVector& v);                     // |v><v|
Complex inner(const ComplexVector& u, const ComplexVector& v);   // <u|v>
double norm(const ComplexVector& v);
ComplexVector scaled(const ComplexVector& v, Complex s);
ComplexMatrix scaled(const ComplexMatrix& a, Complex s);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);
double hermiticity_residual(const ComplexMatrix& a);  // max |a - a^dagger|
double max_abs(const ComplexMatrix& a);
bool all_finite(const ComplexMatrix& a);
bool all_finite(const ComplexVector& v);

// -- Hermitian eigensolver (cyclic Jacobi) ----------------------------------

struct EigenSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k is the eigenvector of values[k]
};

/// Throws NotHermitian if the asymmetry exceeds kTauHerm.
EigenSystem hermitian_eigensystem(const ComplexMatrix& a);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);
double min_eigenvalue(const ComplexMatrix& a);

/// True iff the minimum eigenvalue is >= -kTauPsd. Throws NotHermitian.
bool is_psd(const ComplexMatrix& a);

// Pauli matrices and the qubit Bloch projectors (I +- sigma_i)/2.
ComplexMatrix pauli(int i);                     // i in {1,2,3} -> x, y, z
ComplexVector bloch_up(int i);                  // unit eigenvector of +sigma_i
ComplexVector bloch_down(int i);                // unit eigenvector of -sigma_i

}  // namespace qsep
