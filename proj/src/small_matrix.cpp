#include "magnoqi/small_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "magnoqi/errors.hpp"

namespace magnoqi {

SmallComplexMatrix::SmallComplexMatrix(int n) : n_(n)
{
    if (n < 1 || n > 6) {
        throw std::domain_error("SmallComplexMatrix: dimension must be in 1..6");
    }
}

SmallComplexMatrix SmallComplexMatrix::identity(int n)
{
    SmallComplexMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

SmallComplexMatrix SmallComplexMatrix::from_real(const Mat6& src)
{
    SmallComplexMatrix m(6);
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            m.at(i, j) = src[static_cast<std::size_t>(i * 6 + j)];
        }
    }
    return m;
}

double SmallComplexMatrix::frobenius_norm() const
{
    double s = 0.0;
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            s += std::norm(at(i, j));
        }
    }
    return std::sqrt(s);
}

SmallComplexMatrix companion_matrix(const RealPolynomial& p)
{
    const int n = p.degree();
    if (n < 1 || n > 6) {
        throw std::domain_error("companion_matrix: degree must be in 1..6");
    }
    const double lead = p.coefficients[0];
    if (lead == 0.0) {
        throw std::domain_error("companion_matrix: zero leading coefficient");
    }
    SmallComplexMatrix m(n);
    for (int i = 1; i < n; ++i) m.at(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) {
        m.at(i, n - 1) = -p.coefficients[static_cast<std::size_t>(n - i)] / lead;
    }
    return m;
}

Complex determinant(const SmallComplexMatrix& m)
{
    const int n = m.dim();
    SmallComplexMatrix lu = m;
    Complex det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(lu.at(k, k));
        for (int i = k + 1; i < n; ++i) {
            if (std::abs(lu.at(i, k)) > best) {
                best = std::abs(lu.at(i, k));
                piv = i;
            }
        }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(lu.at(k, j), lu.at(piv, j));
            det = -det;
        }
        det *= lu.at(k, k);
        for (int i = k + 1; i < n; ++i) {
            const Complex f = lu.at(i, k) / lu.at(k, k);
            for (int j = k; j < n; ++j) {
                lu.at(i, j) -= f * lu.at(k, j);
            }
        }
    }
    return det;
}

namespace {

// Reduce to upper Hessenberg form with Householder reflections.
void to_hessenberg(SmallComplexMatrix& h)
{
    const int n = h.dim();
    for (int k = 0; k < n - 2; ++k) {
        double col_scale = 0.0;
        for (int i = k + 1; i < n; ++i) col_scale += std::norm(h.at(i, k));
        col_scale = std::sqrt(col_scale);
        if (col_scale == 0.0) continue;

        std::array<Complex, 6> v{};
        const Complex x0 = h.at(k + 1, k);
        const double x0abs = std::abs(x0);
        const Complex phase = (x0abs == 0.0) ? Complex(1.0) : x0 / x0abs;
        const Complex alpha = -phase * col_scale;

        double vnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[static_cast<std::size_t>(i)] = h.at(i, k);
        }
        v[static_cast<std::size_t>(k + 1)] -= alpha;
        for (int i = k + 1; i < n; ++i) vnorm2 += std::norm(v[static_cast<std::size_t>(i)]);
        if (vnorm2 == 0.0) continue;

        // H = I - 2 v v^H / |v|^2, applied from both sides.
        for (int j = k; j < n; ++j) {
            Complex dot = 0.0;
            for (int i = k + 1; i < n; ++i) {
                dot += std::conj(v[static_cast<std::size_t>(i)]) * h.at(i, j);
            }
            dot *= 2.0 / vnorm2;
            for (int i = k + 1; i < n; ++i) {
                h.at(i, j) -= dot * v[static_cast<std::size_t>(i)];
            }
        }
        for (int i = 0; i < n; ++i) {
            Complex dot = 0.0;
            for (int j = k + 1; j < n; ++j) {
                dot += h.at(i, j) * v[static_cast<std::size_t>(j)];
            }
            dot *= 2.0 / vnorm2;
            for (int j = k + 1; j < n; ++j) {
                h.at(i, j) -= dot * std::conj(v[static_cast<std::size_t>(j)]);
            }
        }
    }
}

// Eigenvalue of the trailing 2x2 block closest to its bottom-right entry.
Complex wilkinson_shift(const SmallComplexMatrix& h, int m)
{
    const Complex a = h.at(m - 1, m - 1);
    const Complex b = h.at(m - 1, m);
    const Complex c = h.at(m, m - 1);
    const Complex d = h.at(m, m);
    const Complex tr = a + d;
    const Complex disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
    const Complex l1 = (tr + disc) / 2.0;
    const Complex l2 = (tr - disc) / 2.0;
    return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

} // namespace

std::vector<Complex> eigenvalues_small(const SmallComplexMatrix& m)
{
    const int n = m.dim();
    if (n == 1) {
        return {m.at(0, 0)};
    }

    SmallComplexMatrix h = m;
    to_hessenberg(h);

    const double norm_scale = std::max(h.frobenius_norm(), 1e-300);
    std::vector<Complex> eig;
    eig.reserve(static_cast<std::size_t>(n));

    int hi = n - 1;
    int stalls = 0;
    int total_iter = 0;
    const int max_iter = 60 * n;

    while (hi >= 0) {
        if (hi == 0) {
            eig.push_back(h.at(0, 0));
            break;
        }
        // Deflation scan.
        int lo = hi;
        while (lo > 0) {
            const double off = std::abs(h.at(lo, lo - 1));
            const double diag = std::abs(h.at(lo - 1, lo - 1)) + std::abs(h.at(lo, lo));
            if (off <= 1e-15 * (diag + norm_scale)) {
                h.at(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        if (std::abs(h.at(hi, hi - 1)) == 0.0 ||
            std::abs(h.at(hi, hi - 1)) <= 1e-15 * (std::abs(h.at(hi - 1, hi - 1)) + std::abs(h.at(hi, hi)) + norm_scale)) {
            eig.push_back(h.at(hi, hi));
            --hi;
            stalls = 0;
            continue;
        }

        if (++total_iter > max_iter) {
            throw NumericalError("eigenvalues_small: QR iteration did not converge");
        }

        Complex mu = wilkinson_shift(h, hi);
        if (++stalls % 12 == 0) {
            // Exceptional shift to break rare cycling.
            mu = h.at(hi, hi) + Complex(std::abs(h.at(hi, hi - 1)), 0.0);
        }

        // Explicit shifted QR step on the active block [lo..hi] via Givens
        // rotations; fine at these dimensions.
        for (int i = lo; i <= hi; ++i) h.at(i, i) -= mu;

        std::array<Complex, 6> cs{};
        std::array<Complex, 6> sn{};
        for (int k = lo; k < hi; ++k) {
            const Complex f = h.at(k, k);
            const Complex g = h.at(k + 1, k);
            const double r = std::sqrt(std::norm(f) + std::norm(g));
            Complex c = 1.0, s = 0.0;
            if (r > 0.0) {
                c = std::conj(f) / r;
                s = std::conj(g) / r;
            }
            cs[static_cast<std::size_t>(k)] = c;
            sn[static_cast<std::size_t>(k)] = s;
            for (int j = k; j <= hi; ++j) {
                const Complex t1 = h.at(k, j);
                const Complex t2 = h.at(k + 1, j);
                h.at(k, j) = c * t1 + s * t2;
                h.at(k + 1, j) = -std::conj(s) * t1 + std::conj(c) * t2;
            }
        }
        for (int k = lo; k < hi; ++k) {
            const Complex c = cs[static_cast<std::size_t>(k)];
            const Complex s = sn[static_cast<std::size_t>(k)];
            for (int i = lo; i <= std::min(k + 1, hi); ++i) {
                const Complex t1 = h.at(i, k);
                const Complex t2 = h.at(i, k + 1);
                h.at(i, k) = t1 * std::conj(c) + t2 * std::conj(s);
                h.at(i, k + 1) = -t1 * s + t2 * c;
            }
        }
        for (int i = lo; i <= hi; ++i) h.at(i, i) += mu;
    }

    return eig;
}

SymplecticPair symplectic_eigenvalues_oracle(const Mat4& v)
{
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw std::domain_error("symplectic_eigenvalues_oracle: non-finite CM entry");
        }
    }
    double asym = 0.0, scale = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            asym = std::max(asym, std::abs(v[static_cast<std::size_t>(i * 4 + j)] -
                                           v[static_cast<std::size_t>(j * 4 + i)]));
            scale = std::max(scale, std::abs(v[static_cast<std::size_t>(i * 4 + j)]));
        }
    }
    if (asym > 1e-9 * std::max(scale, 1.0)) {
        throw std::domain_error("symplectic_eigenvalues_oracle: CM not symmetric");
    }

    // Omega = diag([[0,1],[-1,0]], [[0,1],[-1,0]]); build i*Omega*V.
    static constexpr int omega_row[4] = {1, 0, 3, 2};
    static constexpr double omega_sign[4] = {+1.0, -1.0, +1.0, -1.0};
    SmallComplexMatrix iov(4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            iov.at(i, j) = Complex(0.0, omega_sign[i]) *
                           v[static_cast<std::size_t>(omega_row[i] * 4 + j)];
        }
    }

    std::vector<Complex> eigs = eigenvalues_small(iov);
    std::array<double, 4> mod{};
    for (int i = 0; i < 4; ++i) mod[static_cast<std::size_t>(i)] = std::abs(eigs[static_cast<std::size_t>(i)]);
    std::sort(mod.begin(), mod.end(), std::greater<double>());

    const double pair_scale = std::max(mod[0], 1.0);
    if (mod[0] - mod[1] > 1e-8 * pair_scale || mod[2] - mod[3] > 1e-8 * pair_scale) {
        throw NumericalError("symplectic_eigenvalues_oracle: eigenvalue moduli do not pair (malformed CM)");
    }
    return SymplecticPair{(mod[0] + mod[1]) / 2.0, (mod[2] + mod[3]) / 2.0};
}

} // namespace magnoqi
