// eigen.hpp — cyclic Jacobi eigensolver for real symmetric matrices and the
// positive-semidefinite square root built on it.

#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "oposim/errors.hpp"
#include "oposim/matrix.hpp"

namespace oposim {

struct EigenSym {
    std::vector<double> values; // ascending
    Mat vectors;                // columns are the matching orthonormal eigenvectors
};

namespace detail {

inline double offdiag_norm(const Mat& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
}

} // namespace detail

// Cyclic Jacobi with the stable rotation formula. Matrices here never exceed
// ~30x30, where Jacobi is both fast enough and exceptionally accurate.
inline EigenSym eig_symmetric(const SymMat& m) {
    const std::size_t n = m.size();
    Mat a = m.mat();
    Mat v = Mat::identity(n);

    const double scale = std::max(a.frobenius_norm(), 1e-300);
    const double target = 1e-15 * scale;
    const int max_sweeps = 100;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (detail::offdiag_norm(a) <= target) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) { a(p, q) = a(q, p) = 0.0; continue; }
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0)
                    ? 1.0 / (theta + std::sqrt(theta * theta + 1.0))
                    : -1.0 / (-theta + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = a(p, p), aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k != p && k != q) {
                        const double akp = a(k, p), akq = a(k, q);
                        a(k, p) = a(p, k) = akp - s * (akq + tau * akp);
                        a(k, q) = a(q, k) = akq + s * (akp - tau * akq);
                    }
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp - s * (vkq + tau * vkp);
                    v(k, q) = vkq + s * (vkp - tau * vkq);
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&a](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    EigenSym out;
    out.values.resize(n);
    out.vectors = Mat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

// Unique PSD square root. Eigenvalues in [-1e-10, 0) are treated as rounding
// noise and clamped to zero; anything more negative is a genuine failure.
inline SymMat sqrt_psd(const SymMat& m) {
    constexpr double clamp = -1e-10;
    const EigenSym es = eig_symmetric(m);
    const std::size_t n = m.size();

    std::vector<double> roots(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lam = es.values[k];
        if (lam < clamp)
            throw NotPositiveSemidefinite("sqrt_psd: eigenvalue " + std::to_string(lam) +
                                          " below tolerance");
        roots[k] = (lam > 0.0) ? std::sqrt(lam) : 0.0;
    }

    Mat out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                s += es.vectors(i, k) * roots[k] * es.vectors(j, k);
            out(i, j) = s;
            out(j, i) = s;
        }
    }
    return SymMat(std::move(out));
}

// determinant via the eigenvalues; used for purity diagnostics
inline double det_symmetric(const SymMat& m) {
    double d = 1.0;
    for (double lam : eig_symmetric(m).values) d *= lam;
    return d;
}

} // namespace oposim
