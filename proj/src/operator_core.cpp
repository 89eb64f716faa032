#include "qsl/operator_core.hpp"

#include <algorithm>
#include <cmath>

namespace qsl {

Matrix SpectralDecomposition::reconstruct() const {
    if (projectors.empty()) return Matrix();
    Matrix a = Matrix::Zero(projectors.front().rows(), projectors.front().cols());
    for (std::size_t j = 0; j < eigenvalues.size(); ++j)
        a += eigenvalues[j] * projectors[j];
    return a;
}

bool is_hermitian(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    double scale = std::max(1.0, a.norm());
    return (a - a.adjoint()).norm() <= tol * scale;
}

Matrix hermitize(const Matrix& a, double tol) {
    if (a.rows() != a.cols())
        throw NotHermitian("matrix is not square");
    double scale = std::max(1.0, a.norm());
    if ((a - a.adjoint()).norm() > tol * scale)
        throw NotHermitian("matrix is not Hermitian within tolerance");
    return 0.5 * (a + a.adjoint());
}

SpectralDecomposition spectral_decompose(const Matrix& a, double cluster_tol) {
    Matrix h = hermitize(a);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success)
        throw Error("eigendecomposition failed");

    const Eigen::VectorXd vals = es.eigenvalues();  // ascending
    const Matrix vecs = es.eigenvectors();
    const int n = static_cast<int>(vals.size());

    // Single-linkage clustering on the sorted eigenvalues with a gap
    // tolerance relative to the spectral radius.
    double scale = std::max(1.0, vals.cwiseAbs().maxCoeff());
    double gap = cluster_tol * scale;

    SpectralDecomposition sd;
    int start = 0;
    for (int i = 1; i <= n; ++i) {
        if (i == n || vals(i) - vals(i - 1) > gap) {
            int count = i - start;
            Matrix block = vecs.middleCols(start, count);
            sd.projectors.push_back(block * block.adjoint());
            sd.eigenvalues.push_back(vals.segment(start, count).mean());
            sd.multiplicities.push_back(count);
            start = i;
        }
    }
    // Descending order.
    std::reverse(sd.eigenvalues.begin(), sd.eigenvalues.end());
    std::reverse(sd.projectors.begin(), sd.projectors.end());
    std::reverse(sd.multiplicities.begin(), sd.multiplicities.end());
    return sd;
}

Matrix operator_function(const Matrix& a, const std::function<double(double)>& f,
                         double psd_tol) {
    SpectralDecomposition sd = spectral_decompose(a);
    Matrix out = Matrix::Zero(a.rows(), a.cols());
    for (std::size_t j = 0; j < sd.size(); ++j) {
        double lambda = sd.eigenvalues[j];
        if (lambda < -psd_tol)
            throw NotPSD("matrix has an eigenvalue below -tolerance");
        if (lambda < 0.0) lambda = 0.0;
        out += f(lambda) * sd.projectors[j];
    }
    return out;
}

Matrix sqrtm_psd(const Matrix& a, double psd_tol) {
    // Eigenvalues that are pure roundoff (relative to the spectral radius)
    // are snapped to zero first: sqrt turns an O(eps) eigenvalue error into
    // an O(sqrt(eps)) one otherwise, which would dominate the result on
    // rank-deficient input.
    double radius = a.norm();
    double zero_floor = 1e-14 * std::max(1.0, radius);
    return operator_function(
        a, [zero_floor](double x) { return x < zero_floor ? 0.0 : std::sqrt(x); },
        psd_tol);
}

Matrix polar_absolute(const Matrix& a) {
    // |A| = sqrt(A^dagger A); for rectangular A this is cols x cols.
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinV);
    return svd.matrixV() * svd.singularValues().asDiagonal().toDenseMatrix().cast<Complex>() *
           svd.matrixV().adjoint();
}

Matrix expm_skew(const Matrix& g) {
    // iG is Hermitian; exp(G) = V exp(-i diag) V^dagger.
    Matrix h = Complex(0, 1) * g;
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Vector phases(es.eigenvalues().size());
    for (int k = 0; k < phases.size(); ++k)
        phases(k) = std::exp(Complex(0, -es.eigenvalues()(k)));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix time_ordered_exponential(const std::function<Matrix(double)>& generator,
                                double t0, double t1, int steps) {
    if (steps < 1)
        throw ValidationError("steps must be >= 1");
    if (t1 < t0)
        throw ValidationError("t1 must be >= t0");
    double dt = (t1 - t0) / steps;
    Matrix u;
    for (int k = 0; k < steps; ++k) {
        double tm = t0 + (k + 0.5) * dt;
        Matrix step = expm_skew(generator(tm) * dt);
        u = (k == 0) ? step : Matrix(step * u);  // later times leftmost
    }
    return u;
}

} // namespace qsl
