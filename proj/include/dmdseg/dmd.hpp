#ifndef DMDSEG_DMD_HPP
#define DMDSEG_DMD_HPP

#include <span>
#include <vector>

#include "dmdseg/image.hpp"
#include "dmdseg/snapshots.hpp"

namespace dmdseg {

/// Thin SVD of the first snapshot matrix, truncated at a relative
/// singular-value cutoff.
struct ThinSvd {
    Matrix u;     // mn x r, orthonormal columns
    Vector sigma; // r singular values, non-increasing, all > cutoff
    Matrix v;     // (N-1) x r, orthonormal columns
    int rank = 0;
};

/// Full output of the SVD-based decomposition of one image sequence.
///
/// eigenvalues[j] is the discrete-time multiplier sigma_j of mode j;
/// modes.col(j) is the spatial pattern, scaled to unit Euclidean norm
/// (the amplitude absorbs the magnitude); frequencies[j] = log(sigma_j) /
/// delta_t on the principal branch, NaN when sigma_j == 0 (undefined, not
/// fabricated); amplitudes solve modes * b ~= first frame in least squares.
struct DmdResult {
    ComplexVector eigenvalues;
    ComplexMatrix modes; // mn x rank, unit-norm columns
    ComplexVector frequencies;
    ComplexVector amplitudes;
    int rank = 0;
    double delta_t = 1.0;
};

/// Eigendecomposition of the reduced operator.
struct EigPair {
    ComplexVector values;
    ComplexMatrix vectors; // unit-norm columns
};

/// Real-part reconstruction plus the largest absolute imaginary residue
/// discarded when taking the real part.
struct Reconstruction {
    Matrix series; // mn x (f+1)
    double imag_residue = 0.0;
};

/// Truncated thin SVD of p1: retains singular triplets with
/// sigma_i >= rel_cutoff * sigma_1. Throws NumericalError on an all-zero
/// matrix ("rank zero").
ThinSvd thin_svd(const Matrix& p1, double rel_cutoff = 1e-10);

/// Reduced operator H = U^T P2 V Sigma^{-1}, the projection of the unknown
/// propagator onto the left singular subspace of P1. Real input gives a
/// real r x r matrix.
Matrix compute_h_tilde(const ThinSvd& svd, const Matrix& p2);

/// Dense nonsymmetric eigendecomposition of the reduced operator.
/// Postcondition: ||H w_j - lambda_j w_j|| <= 1e-8 * ||H|| per pair,
/// eigenvectors unit-norm. Throws NumericalError on non-convergence.
EigPair eig_small(const Matrix& h_tilde);

/// Dynamic modes Psi = P2 V Sigma^{-1} omega, each column scaled to unit
/// Euclidean norm.
ComplexMatrix compute_modes(const Matrix& p2, const ThinSvd& svd,
                            const ComplexMatrix& omega);

/// Continuous-time rates mu_j = log(sigma_j) / delta_t (principal branch).
/// A zero eigenvalue yields NaN.
ComplexVector compute_frequencies(const ComplexVector& eigenvalues, double delta_t);

/// Vandermonde matrix of eigenvalue powers: entry (j, k) = sigma_j^k for
/// k = 0..f. Column f = N-1 reconstructs; f beyond that forecasts.
ComplexMatrix vandermonde(const ComplexVector& eigenvalues, int f);

/// Least-squares amplitudes b minimizing ||Psi b - first_frame||. Falls
/// back to the minimum-norm solution (with a warning on stderr) when Psi
/// is rank-deficient.
ComplexVector compute_amplitudes(const ComplexMatrix& modes, const Vector& first_frame);

/// X_hat = Psi_sel diag(b_sel) Vandermonde(sigma_sel, f), real part.
/// mode_indices are 0-based columns of result.modes; must be non-empty.
Reconstruction reconstruct(const DmdResult& result, std::span<const int> mode_indices, int f);

/// Whole-pipeline convenience: split, thin SVD, reduced operator,
/// eigendecomposition, modes, frequencies, amplitudes.
DmdResult run_dmd(const Matrix& data, double delta_t, double rel_cutoff = 1e-10);

} // namespace dmdseg

#endif
