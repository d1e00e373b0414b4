#ifndef MAGNOQI_POLYNOMIAL_HPP
#define MAGNOQI_POLYNOMIAL_HPP

#include <array>
#include <vector>

namespace magnoqi {

// Real polynomial, coefficients highest degree first. The leading
// coefficient must be nonzero; degree is capped at 6 by construction sites.
struct RealPolynomial {
    std::vector<double> coefficients;

    int degree() const { return static_cast<int>(coefficients.size()) - 1; }
};

// Row-major real 6x6 matrix.
using Mat6 = std::array<double, 36>;

// Characteristic polynomial det(sI - M) of a real 6x6 matrix via the
// Faddeev-LeVerrier recursion. Monic, degree exactly 6.
RealPolynomial characteristic_polynomial(const Mat6& m);

// Routh-Hurwitz criterion: true iff every root of p lies strictly in the
// open left half plane. A vanishing pivot in the Routh array (|pivot| <
// 1e-14 relative to the row scale) is a marginal case and returns false.
// Expects a normalized polynomial (leading coefficient 1).
bool routh_hurwitz_stable(const RealPolynomial& p);

} // namespace magnoqi

#endif
