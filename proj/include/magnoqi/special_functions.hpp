#ifndef MAGNOQI_SPECIAL_FUNCTIONS_HPP
#define MAGNOQI_SPECIAL_FUNCTIONS_HPP

namespace magnoqi {

// Complementary error function, self-contained: Maclaurin series of erf for
// |x| <= 2, continued fraction beyond. Absolute error <= 1e-12 on [-6, 27];
// underflows to exactly 0 for large x. Throws std::domain_error on
// non-finite input.
double erfc(double x);

// log(erfc(x)) without underflow for large positive x (asymptotic expansion
// beyond x = 20). Same domain checks as erfc.
double log_erfc(double x);

// Bosonic entropy function
//   h(x) = (x + 1/2) log2(x + 1/2) - (x - 1/2) log2(x - 1/2),
// defined for x >= 1/2 with the continuous limit h(1/2) = 0. Inputs below
// 1/2 - 1e-12 are unphysical symplectic eigenvalues and throw
// std::domain_error; inputs within 1e-12 of 1/2 return 0.
double entropy_h(double x);

} // namespace magnoqi

#endif
