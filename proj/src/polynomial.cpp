#include "magnoqi/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace magnoqi {

namespace {

Mat6 matmul(const Mat6& a, const Mat6& b)
{
    Mat6 r{};
    for (int i = 0; i < 6; ++i) {
        for (int k = 0; k < 6; ++k) {
            const double aik = a[i * 6 + k];
            if (aik == 0.0) continue;
            for (int j = 0; j < 6; ++j) {
                r[i * 6 + j] += aik * b[k * 6 + j];
            }
        }
    }
    return r;
}

double trace(const Mat6& a)
{
    double t = 0.0;
    for (int i = 0; i < 6; ++i) t += a[i * 6 + i];
    return t;
}

} // namespace

RealPolynomial characteristic_polynomial(const Mat6& m)
{
    for (double v : m) {
        if (!std::isfinite(v)) {
            throw std::domain_error("characteristic_polynomial: non-finite matrix entry");
        }
    }
    // Faddeev-LeVerrier: M1 = M, c_k = -tr(M_k)/k, M_{k+1} = M (M_k + c_k I).
    RealPolynomial p;
    p.coefficients.assign(7, 0.0);
    p.coefficients[0] = 1.0;
    Mat6 mk = m;
    for (int k = 1; k <= 6; ++k) {
        const double ck = -trace(mk) / k;
        p.coefficients[k] = ck;
        if (k == 6) break;
        Mat6 shifted = mk;
        for (int i = 0; i < 6; ++i) shifted[i * 6 + i] += ck;
        mk = matmul(m, shifted);
    }
    return p;
}

bool routh_hurwitz_stable(const RealPolynomial& p)
{
    const int n = p.degree();
    if (n < 0 || p.coefficients.empty() || p.coefficients[0] == 0.0) {
        throw std::domain_error("routh_hurwitz_stable: leading coefficient must be nonzero");
    }
    if (n == 0) {
        return true; // no roots
    }

    // Normalize defensively; the criterion is scale invariant.
    std::vector<double> a = p.coefficients;
    const double lead = a[0];
    for (double& v : a) v /= lead;

    // Balance via s -> sigma*s so the coefficients are O(1); physical rate
    // polynomials otherwise span ~40 orders of magnitude and drown the
    // zero-pivot test.
    double sigma = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double ak = std::abs(a[static_cast<std::size_t>(k)]);
        if (ak > 0.0) sigma = std::max(sigma, std::pow(ak, 1.0 / k));
    }
    if (sigma == 0.0) {
        return false; // s^n: all roots at the origin
    }
    double power = 1.0;
    for (int k = 1; k <= n; ++k) {
        power *= sigma;
        a[static_cast<std::size_t>(k)] /= power;
    }

    // First two Routh rows: even- and odd-indexed coefficients.
    const std::size_t width = static_cast<std::size_t>(n / 2 + 1);
    std::vector<double> prev(width, 0.0), curr(width, 0.0);
    for (int i = 0; i <= n; i += 2) prev[i / 2] = a[static_cast<std::size_t>(i)];
    for (int i = 1; i <= n; i += 2) curr[(i - 1) / 2] = a[static_cast<std::size_t>(i)];

    if (prev[0] <= 0.0) return false;
    for (int row = 1; row <= n; ++row) {
        const double pivot = curr[0];
        double row_scale = 1.0;
        for (std::size_t j = 0; j < width; ++j) {
            row_scale = std::max({row_scale, std::abs(prev[j]), std::abs(curr[j])});
        }
        if (std::abs(pivot) <= 1e-14 * row_scale) {
            return false; // marginal case: treated as unstable
        }
        if (pivot < 0.0) {
            return false;
        }
        if (row == n) break;
        std::vector<double> next(width, 0.0);
        for (std::size_t j = 0; j + 1 < width; ++j) {
            next[j] = (pivot * prev[j + 1] - prev[0] * curr[j + 1]) / pivot;
        }
        prev = curr;
        curr = next;
    }
    return true;
}

} // namespace magnoqi
