#include "qsl/uhlmann.hpp"

#include <cmath>

namespace qsl {

DensityOperator Amplitude::project() const {
    return DensityOperator::validate(w * w.adjoint(), 1e-8);
}

Amplitude amplitude_of(const DensityOperator& rho) {
    const SpectralDecomposition& sd = rho.spectrum();
    double zero_threshold = 1e-12 * sd.eigenvalues.front();
    Matrix w(rho.dim(), rho.rank());
    int col = 0;
    for (std::size_t j = 0; j < sd.size(); ++j) {
        if (sd.eigenvalues[j] <= zero_threshold) continue;
        Eigen::SelfAdjointEigenSolver<Matrix> es(sd.projectors[j]);
        Matrix support = es.eigenvectors().rightCols(sd.multiplicities[j]);
        for (int k = 0; k < sd.multiplicities[j]; ++k, ++col)
            w.col(col) = std::sqrt(sd.eigenvalues[j]) * support.col(k);
    }
    return {w, rho.rank()};
}

HorizontalityResult is_horizontal(const Amplitude& w, const Matrix& wdot, double tol) {
    if (wdot.rows() != w.w.rows() || wdot.cols() != w.w.cols())
        throw DimensionMismatch("amplitude and velocity shapes differ");
    double residual = (wdot.adjoint() * w.w - w.w.adjoint() * wdot).norm();
    return {residual < tol, residual};
}

Matrix connection_solve(const Amplitude& w, const Matrix& wdot) {
    if (wdot.rows() != w.w.rows() || wdot.cols() != w.w.cols())
        throw DimensionMismatch("amplitude and velocity shapes differ");
    Matrix gram = w.w.adjoint() * w.w;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gram + gram.adjoint()));
    if (es.eigenvalues().minCoeff() < 1e-12)
        throw SingularGram("amplitude Gram matrix is singular");
    Matrix m = w.w.adjoint() * wdot - wdot.adjoint() * w.w;
    Matrix m_eig = es.eigenvectors().adjoint() * m * es.eigenvectors();
    const int n = w.reference_rank;
    Matrix x(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            x(a, b) = m_eig(a, b) / (es.eigenvalues()(a) + es.eigenvalues()(b));
    return es.eigenvectors() * x * es.eigenvectors().adjoint();
}

std::vector<Amplitude> horizontal_lift(const Trajectory& traj) {
    if (traj.size() == 0)
        throw EmptyTrajectory("trajectory has no samples");
    Amplitude w0 = amplitude_of(traj.states.front());
    std::vector<Amplitude> lift;
    lift.reserve(traj.size());
    lift.push_back(w0);
    Matrix w = w0.w;
    for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
        double dt = traj.times[k + 1] - traj.times[k];
        const Matrix& h = traj.hamiltonians[k];
        Amplitude current{w, w0.reference_rank};
        Matrix x = connection_solve(current, Complex(0, -1) * h * w);
        // Schroedinger step on the left, fiber correction on the right.
        w = expm_skew(Complex(0, -dt) * h) * w * expm_skew(-dt * x);
        lift.push_back({w, w0.reference_rank});
    }
    return lift;
}

double bures_speed(const Matrix& h, const DensityOperator& rho) {
    return 0.5 * std::sqrt(quantum_fisher_information(h, rho));
}

Matrix bures_geodesic_hamiltonian(const DensityOperator& rho0, double beta) {
    if (beta <= 0.0)
        throw ValidationError("beta must be positive");
    const int dim = rho0.dim();
    const int n = rho0.rank();
    if (2 * n > dim)
        throw RankTooLarge("state rank exceeds half the dimension");

    Matrix support_proj = rho0.support_projector();
    Eigen::SelfAdjointEigenSolver<Matrix> es(support_proj);
    // Ascending eigenvalues: first N-n columns span the kernel, last n the
    // support. The kernel target subspace is the first n kernel vectors.
    Matrix kernel = es.eigenvectors().leftCols(dim - n);
    Matrix support = es.eigenvectors().rightCols(n);

    Matrix h = Matrix::Zero(dim, dim);
    double root = std::sqrt(beta);
    for (int k = 0; k < n; ++k) {
        h += root * (kernel.col(k) * support.col(k).adjoint() +
                     support.col(k) * kernel.col(k).adjoint());
    }
    return h;
}

TightnessReport uhlmann_tightness_check(const Trajectory& traj, double tol) {
    double max_dev = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        Matrix pi = traj.states[k].support_projector();
        int rank = traj.states[k].rank();
        Matrix block = pi * traj.hamiltonians[k] * pi;
        double alpha = block.trace().real() / rank;
        max_dev = std::max(max_dev, (block - alpha * pi).norm());
    }
    return {max_dev, max_dev < tol};
}

} // namespace qsl
