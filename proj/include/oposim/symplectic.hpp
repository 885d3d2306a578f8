// symplectic.hpp — the symplectic form, symplectic spectra of covariance
// matrices, and the physicality check built on them.
//
// Quadrature ordering is (p1, q1, p2, q2, ...) with vacuum noise at 1, so a
// physical covariance matrix has every symplectic eigenvalue >= 1.

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "oposim/eigen.hpp"
#include "oposim/errors.hpp"
#include "oposim/matrix.hpp"

namespace oposim {

// block-diagonal form Omega = diag([[0,1],[-1,0]], ...), one block per mode
inline Mat symplectic_form(std::size_t n_modes) {
    Mat omega(2 * n_modes, 2 * n_modes);
    for (std::size_t k = 0; k < n_modes; ++k) {
        omega(2 * k, 2 * k + 1) = 1.0;
        omega(2 * k + 1, 2 * k) = -1.0;
    }
    return omega;
}

// Symplectic eigenvalues of a positive-definite V, each reported once.
//
// Route: S = sqrt(V), A = S Omega S. A is antisymmetric with eigenvalues
// +-i nu_k, so A^T A is symmetric PSD with each nu_k^2 twice. Diagonalising
// A^T A with the Jacobi solver and taking square roots of the even-indexed
// ascending eigenvalues gives each nu once.
inline std::vector<double> symplectic_spectrum(const SymMat& v) {
    const std::size_t dim = v.size();
    if (dim == 0 || dim % 2 != 0)
        throw ValidationError("symplectic_spectrum: dimension " + std::to_string(dim) +
                              " is not a positive even number");

    const EigenSym ev = eig_symmetric(v);
    if (ev.values.front() <= 0.0)
        throw NotPositiveDefinite("symplectic_spectrum: covariance eigenvalue " +
                                  std::to_string(ev.values.front()) + " is not positive");

    const SymMat s = sqrt_psd(v);
    const Mat a = s.mat() * symplectic_form(dim / 2) * s.mat();
    const SymMat ata = SymMat::mirrored(a.transpose() * a);

    const EigenSym sq = eig_symmetric(ata);
    std::vector<double> nus(dim / 2);
    for (std::size_t k = 0; k < dim / 2; ++k) {
        const double lam = std::max(sq.values[2 * k], 0.0); // paired with sq.values[2k+1]
        nus[k] = std::sqrt(lam);
    }
    return nus;
}

inline double min_symplectic_eigenvalue(const SymMat& v) {
    const auto nus = symplectic_spectrum(v);
    return *std::min_element(nus.begin(), nus.end());
}

// V describes a quantum state iff every symplectic eigenvalue is >= 1;
// `tol` absorbs rounding in the eigensolve.
inline bool is_physical(const SymMat& v, double tol = 1e-9) {
    return min_symplectic_eigenvalue(v) >= 1.0 - tol;
}

} // namespace oposim
