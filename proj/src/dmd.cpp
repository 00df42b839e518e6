#include "dmdseg/dmd.hpp"

#include <cmath>
#include <complex>
#include <iostream>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace dmdseg {

ThinSvd thin_svd(const Matrix& p1, double rel_cutoff) {
    if (rel_cutoff < 0.0 || rel_cutoff >= 1.0)
        throw ValidationError("thin_svd: rel_cutoff must be in [0, 1)");
    if (p1.size() == 0 || p1.isZero(0.0))
        throw NumericalError("rank zero: degenerate sequence");

    Eigen::BDCSVD<Matrix> svd(p1, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sv = svd.singularValues();

    int rank = 0;
    const double cutoff = rel_cutoff * sv[0];
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv[i] > 0.0 && sv[i] >= cutoff)
            ++rank;
        else
            break; // singular values are non-increasing
    }
    if (rank == 0)
        throw NumericalError("rank zero: degenerate sequence");

    return ThinSvd{svd.matrixU().leftCols(rank), sv.head(rank), svd.matrixV().leftCols(rank), rank};
}

Matrix compute_h_tilde(const ThinSvd& svd, const Matrix& p2) {
    if (p2.rows() != svd.u.rows() || p2.cols() != svd.v.rows())
        throw ValidationError("compute_h_tilde: shape mismatch between SVD and P2");
    return svd.u.transpose() * p2 * svd.v * svd.sigma.cwiseInverse().asDiagonal();
}

EigPair eig_small(const Matrix& h_tilde) {
    if (h_tilde.rows() != h_tilde.cols() || h_tilde.rows() < 1)
        throw ValidationError("eig_small: matrix must be square, r >= 1");

    Eigen::EigenSolver<Matrix> es(h_tilde, true);
    if (es.info() != Eigen::Success) {
        // Eigen's real Schur iteration caps at 40 sweeps per row
        throw NumericalError("eigen solver did not converge within " +
                             std::to_string(40 * h_tilde.rows()) + " QR iterations");
    }
    EigPair out{es.eigenvalues(), es.eigenvectors()};

    const double scale = h_tilde.norm();
    for (Eigen::Index j = 0; j < out.values.size(); ++j) {
        const double resid =
            (h_tilde.cast<Complex>() * out.vectors.col(j) - out.values[j] * out.vectors.col(j)).norm();
        if (resid > 1e-8 * scale)
            throw NumericalError("eigenpair residual " + std::to_string(resid) +
                                 " exceeds 1e-8 * ||H||");
    }
    return out;
}

ComplexMatrix compute_modes(const Matrix& p2, const ThinSvd& svd, const ComplexMatrix& omega) {
    if (p2.cols() != svd.v.rows() || omega.rows() != svd.rank)
        throw ValidationError("compute_modes: shape mismatch");
    ComplexMatrix modes =
        (p2 * svd.v * svd.sigma.cwiseInverse().asDiagonal()).cast<Complex>() * omega;
    for (Eigen::Index j = 0; j < modes.cols(); ++j) {
        const double norm = modes.col(j).norm();
        if (norm > 0.0)
            modes.col(j) /= norm;
    }
    return modes;
}

ComplexVector compute_frequencies(const ComplexVector& eigenvalues, double delta_t) {
    if (delta_t <= 0.0)
        throw ValidationError("compute_frequencies: delta_t must be > 0");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    ComplexVector mu(eigenvalues.size());
    for (Eigen::Index j = 0; j < eigenvalues.size(); ++j) {
        if (eigenvalues[j] == Complex(0.0, 0.0))
            mu[j] = Complex(nan, nan); // undefined, excluded rather than fabricated
        else
            mu[j] = std::log(eigenvalues[j]) / delta_t;
    }
    return mu;
}

ComplexMatrix vandermonde(const ComplexVector& eigenvalues, int f) {
    if (f < 0)
        throw ValidationError("vandermonde: f must be >= 0");
    ComplexMatrix v(eigenvalues.size(), f + 1);
    v.col(0).setOnes();
    for (int k = 1; k <= f; ++k)
        v.col(k) = v.col(k - 1).cwiseProduct(eigenvalues);
    return v;
}

ComplexVector compute_amplitudes(const ComplexMatrix& modes, const Vector& first_frame) {
    if (modes.cols() == 0)
        throw ValidationError("compute_amplitudes: no modes");
    if (modes.rows() != first_frame.size())
        throw ValidationError("compute_amplitudes: frame length does not match modes");

    Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(modes);
    if (cod.rank() < modes.cols())
        std::cerr << "warning: rank-deficient mode matrix (rank " << cod.rank() << " of "
                  << modes.cols() << "); using minimum-norm amplitudes\n";
    return cod.solve(first_frame.cast<Complex>());
}

Reconstruction reconstruct(const DmdResult& result, std::span<const int> mode_indices, int f) {
    if (mode_indices.empty())
        throw ValidationError("reconstruct: empty mode index set");
    for (int idx : mode_indices)
        if (idx < 0 || idx >= result.rank)
            throw ValidationError("reconstruct: mode index " + std::to_string(idx) +
                                  " out of range (rank " + std::to_string(result.rank) + ")");

    const Eigen::Index nsel = static_cast<Eigen::Index>(mode_indices.size());
    ComplexMatrix psi(result.modes.rows(), nsel);
    ComplexVector sigma(nsel), b(nsel);
    for (Eigen::Index j = 0; j < nsel; ++j) {
        psi.col(j) = result.modes.col(mode_indices[j]);
        sigma[j] = result.eigenvalues[mode_indices[j]];
        b[j] = result.amplitudes[mode_indices[j]];
    }

    const ComplexMatrix series = psi * b.asDiagonal() * vandermonde(sigma, f);
    return Reconstruction{series.real(), series.imag().cwiseAbs().maxCoeff()};
}

DmdResult run_dmd(const Matrix& data, double delta_t, double rel_cutoff) {
    if (delta_t <= 0.0)
        throw ValidationError("run_dmd: delta_t must be > 0");
    const SnapshotPair pair = split_snapshots(data);
    const ThinSvd svd = thin_svd(pair.p1, rel_cutoff);
    const Matrix h_tilde = compute_h_tilde(svd, pair.p2);
    const EigPair eig = eig_small(h_tilde);

    DmdResult result;
    result.eigenvalues = eig.values;
    result.modes = compute_modes(pair.p2, svd, eig.vectors);
    result.frequencies = compute_frequencies(eig.values, delta_t);
    result.amplitudes = compute_amplitudes(result.modes, data.col(0));
    result.rank = svd.rank;
    result.delta_t = delta_t;
    return result;
}

} // namespace dmdseg
