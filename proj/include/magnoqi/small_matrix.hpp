#ifndef MAGNOQI_SMALL_MATRIX_HPP
#define MAGNOQI_SMALL_MATRIX_HPP

#include <array>
#include <complex>
#include <vector>

#include "magnoqi/polynomial.hpp"

namespace magnoqi {

using Complex = std::complex<double>;

// Dense complex matrix of dimension n <= 6, fixed storage.
class SmallComplexMatrix {
public:
    explicit SmallComplexMatrix(int n);

    int dim() const { return n_; }
    Complex& at(int i, int j) { return a_[static_cast<std::size_t>(i * n_ + j)]; }
    const Complex& at(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }

    static SmallComplexMatrix identity(int n);
    static SmallComplexMatrix from_real(const Mat6& m);

    double frobenius_norm() const;

private:
    int n_;
    std::array<Complex, 36> a_{};
};

// Companion matrix of a normalized polynomial (leading coefficient 1),
// degree <= 6; its eigenvalues are the polynomial's roots.
SmallComplexMatrix companion_matrix(const RealPolynomial& p);

// Determinant via LU with partial pivoting (test oracle support).
Complex determinant(const SmallComplexMatrix& m);

// All n eigenvalues (with multiplicity) of an n x n complex matrix, n <= 6,
// via Hessenberg reduction and Wilkinson-shifted QR iteration. Converges to
// ~1e-10 relative accuracy; throws NumericalError if the iteration stalls.
std::vector<Complex> eigenvalues_small(const SmallComplexMatrix& m);

// Symplectic spectrum of a two-mode covariance matrix.
struct SymplecticPair {
    double nu_plus = 0.0;
    double nu_minus = 0.0;
};

// Row-major real symmetric 4x4 covariance matrix in (X_b, Y_b, X_a, Y_a)
// quadrature ordering with vacuum noise 1/2.
using Mat4 = std::array<double, 16>;

// Independent oracle: the eigenvalue moduli of i*Omega*V collapse into two
// pairs, returned sorted descending. Omega is the block-diagonal symplectic
// form with 2x2 blocks [[0,1],[-1,0]]. Throws NumericalError if the four
// moduli fail to pair within 1e-8 of the matrix scale (malformed CM).
SymplecticPair symplectic_eigenvalues_oracle(const Mat4& v);

} // namespace magnoqi

#endif
