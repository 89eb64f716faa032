#ifndef QSL_OPERATOR_CORE_HPP
#define QSL_OPERATOR_CORE_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "qsl/error.hpp"

namespace qsl {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Spectral decomposition A = sum_j lambda_j P_j with distinct eigenvalues
/// in strictly descending order and pairwise orthogonal eigenprojectors.
/// Eigenvalues closer than the clustering tolerance are merged into a single
/// eigenspace, so degenerate spectra yield higher-rank projectors.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;   // distinct, descending
    std::vector<Matrix> projectors;    // Hermitian, P_j P_k = delta_jk P_j
    std::vector<int> multiplicities;

    std::size_t size() const { return eigenvalues.size(); }
    Matrix reconstruct() const;
};

bool is_hermitian(const Matrix& a, double tol = 1e-10);

/// Returns (A + A^dagger)/2, or throws NotHermitian if the skew part is
/// larger than tol relative to the Frobenius norm of A.
Matrix hermitize(const Matrix& a, double tol = 1e-10);

SpectralDecomposition spectral_decompose(const Matrix& a, double cluster_tol = 1e-9);

/// Spectral calculus on a PSD Hermitian matrix: sum_j f(lambda_j) P_j.
/// Eigenvalues in (-psd_tol, 0) are clamped to zero; below -psd_tol throws.
Matrix operator_function(const Matrix& a, const std::function<double(double)>& f,
                         double psd_tol = 1e-10);

Matrix sqrtm_psd(const Matrix& a, double psd_tol = 1e-10);

/// |A| = sqrt(A^dagger A); cols x cols for rectangular input. Eigenvalues of
/// the result are the singular values of A.
Matrix polar_absolute(const Matrix& a);

/// exp(G) for skew-Hermitian G, computed via the eigendecomposition of iG.
/// Exactly unitary up to roundoff.
Matrix expm_skew(const Matrix& g);

/// Midpoint-rule time-ordered exponential of a skew-Hermitian generator,
/// later times leftmost. Second-order accurate, exactly unitary per step.
Matrix time_ordered_exponential(const std::function<Matrix(double)>& generator,
                                double t0, double t1, int steps);

} // namespace qsl

#endif
