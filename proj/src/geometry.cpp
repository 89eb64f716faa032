#include "qsl/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qsl {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

double arccos_clamped(double x) {
    return std::acos(std::clamp(x, -1.0, 1.0));
}

// arccos for principal-angle cosines. Values within 1e-12 of 1 are treated
// as exact intersections: the arccos derivative blows up there, so plain
// roundoff (~1e-15) in a cosine would otherwise show up as a spurious angle
// of order 1e-8.
double angle_from_cosine(double c) {
    if (c >= 1.0 - 1e-12) return 0.0;
    return arccos_clamped(c);
}

void check_pair(const Projector& p0, const Projector& p1) {
    if (p0.dim() != p1.dim())
        throw DimensionMismatch("projector dimensions differ");
    if (p0.rank != p1.rank)
        throw RankMismatch("projector ranks differ");
}

// Nonzero eigenspace projectors of rho paired with their eigenvalues.
std::vector<std::pair<double, Projector>> nonzero_eigenspaces(const DensityOperator& rho) {
    std::vector<std::pair<double, Projector>> out;
    const SpectralDecomposition& sd = rho.spectrum();
    double zero_threshold = 1e-12 * sd.eigenvalues.front();
    for (std::size_t j = 0; j < sd.size(); ++j) {
        if (sd.eigenvalues[j] <= zero_threshold) continue;
        out.push_back({sd.eigenvalues[j],
                       Projector{sd.projectors[j], sd.multiplicities[j]}});
    }
    return out;
}

void check_isospectral(const DensityOperator& rho0, const DensityOperator& rho1,
                       double iso_tol) {
    if (rho0.dim() != rho1.dim())
        throw DimensionMismatch("state dimensions differ");
    if (!isospectral(rho0, rho1, iso_tol))
        throw NotIsospectral("states are not isospectral");
}

} // namespace

bool isospectral(const DensityOperator& rho0, const DensityOperator& rho1,
                 double iso_tol) {
    if (rho0.dim() != rho1.dim()) return false;
    auto a = nonzero_eigenspaces(rho0);
    auto b = nonzero_eigenspaces(rho1);
    if (a.size() != b.size()) return false;
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (std::abs(a[j].first - b[j].first) > iso_tol) return false;
        if (a[j].second.rank != b[j].second.rank) return false;
    }
    return true;
}

Projector Projector::from_matrix(const Matrix& m, double tol) {
    Matrix h = hermitize(m, tol);
    if ((h * h - h).norm() > std::max(tol, 1e-10) * std::max(1.0, h.norm()) * 100)
        throw NotProjector("matrix is not idempotent");
    int rank = static_cast<int>(std::lround(h.trace().real()));
    if (rank < 1 || std::abs(h.trace().real() - rank) > 1e-8)
        throw NotProjector("projector trace is not a positive integer");
    return {h, rank};
}

Matrix frame_of(const Projector& p) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(p.matrix);
    // Eigenvalues ascending; the support eigenvectors are the last `rank`.
    return es.eigenvectors().rightCols(p.rank);
}

double fs_distance_pure(const DensityOperator& rho0, const DensityOperator& rho1) {
    if (rho0.dim() != rho1.dim())
        throw DimensionMismatch("state dimensions differ");
    if (!rho0.is_pure() || !rho1.is_pure())
        throw NotPure("fs_distance_pure requires rank-1 states");
    double overlap = (rho0.matrix() * rho1.matrix()).trace().real();
    return arccos_clamped(std::sqrt(std::max(0.0, overlap)));
}

PrincipalAngleSet principal_angles(const Projector& p0, const Projector& p1) {
    check_pair(p0, p1);
    Matrix overlap = frame_of(p0).adjoint() * frame_of(p1);
    Eigen::JacobiSVD<Matrix> svd(overlap);
    PrincipalAngleSet out;
    for (int k = 0; k < svd.singularValues().size(); ++k)
        out.angles.push_back(angle_from_cosine(svd.singularValues()(k)));
    std::sort(out.angles.begin(), out.angles.end(), std::greater<double>());
    return out;
}

double grassmann_distance(const Projector& p0, const Projector& p1) {
    check_pair(p0, p1);
    Matrix abs01 = polar_absolute(p0.matrix * p1.matrix);
    Matrix theta = operator_function(abs01, [](double x) {
        return angle_from_cosine(std::max(x, 0.0));
    });
    double tr = (theta * theta).trace().real();
    double excess = kHalfPi * kHalfPi * (p0.dim() - p0.rank);
    return std::sqrt(std::max(0.0, tr - excess));
}

double grassmann_distance_frames(const Projector& p0, const Projector& p1) {
    check_pair(p0, p1);
    PrincipalAngleSet angles = principal_angles(p0, p1);
    double sum = 0.0;
    for (double xi : angles.angles) sum += xi * xi;
    return std::sqrt(sum);
}

Projector GrassmannGeodesic::at(double t) const {
    Matrix u = expm_skew(Complex(0, -t) * generator);
    return {u * start.matrix * u.adjoint(), start.rank};
}

GrassmannGeodesic grassmann_geodesic(const Projector& p0, const Projector& p1) {
    check_pair(p0, p1);
    const int dim = p0.dim();
    Matrix f0 = frame_of(p0);
    Matrix f1 = frame_of(p1);
    Eigen::JacobiSVD<Matrix> svd(f0.adjoint() * f1,
                                 Eigen::ComputeFullU | Eigen::ComputeFullV);

    // Principal vectors: x_k in supp P0, z_k in supp P1 with <x_k, z_l> =
    // delta_kl cos(xi_k). For xi_k > 0 the rotation plane partner is the
    // normalized component of z_k outside supp P0. Directions with xi_k = 0
    // are common to both supports and stay fixed, which also covers the
    // 2n > N reduction.
    Matrix x = f0 * svd.matrixU();
    Matrix z = f1 * svd.matrixV();

    Matrix h = Matrix::Zero(dim, dim);
    double length_sq = 0.0;
    for (int k = 0; k < p0.rank; ++k) {
        double c = std::clamp(svd.singularValues()(k), 0.0, 1.0);
        double xi = std::acos(c);
        Vector residue = z.col(k) - c * x.col(k);
        double s = residue.norm();
        if (s < 1e-13) continue;
        Vector y = residue / s;
        h += xi * Complex(0, 1) * (y * x.col(k).adjoint() - x.col(k) * y.adjoint());
        length_sq += xi * xi;
    }
    return {h, p0, std::sqrt(length_sq)};
}

double product_grassmann_distance(const DensityOperator& rho0, const DensityOperator& rho1,
                                  double iso_tol) {
    check_isospectral(rho0, rho1, iso_tol);
    auto a = nonzero_eigenspaces(rho0);
    auto b = nonzero_eigenspaces(rho1);
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        double d = grassmann_distance(a[j].second, b[j].second);
        sum += a[j].first * d * d;
    }
    return std::sqrt(sum);
}

double plucker_distance(const Projector& p0, const Projector& p1) {
    check_pair(p0, p1);
    double det = std::abs((frame_of(p0).adjoint() * frame_of(p1)).determinant());
    return angle_from_cosine(det);
}

double product_plucker_distance(const DensityOperator& rho0, const DensityOperator& rho1,
                                double iso_tol) {
    check_isospectral(rho0, rho1, iso_tol);
    auto a = nonzero_eigenspaces(rho0);
    auto b = nonzero_eigenspaces(rho1);
    double sum = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        double d = plucker_distance(a[j].second, b[j].second);
        sum += a[j].first * d * d;
    }
    return std::sqrt(sum);
}

double fidelity_sqrt(const DensityOperator& rho0, const DensityOperator& rho1) {
    if (rho0.dim() != rho1.dim())
        throw DimensionMismatch("state dimensions differ");
    Matrix s0 = rho0.sqrt();
    Matrix inner = sqrtm_psd(s0 * rho1.matrix() * s0, 1e-9);
    return std::clamp(inner.trace().real(), 0.0, 1.0);
}

double bures_angle(const DensityOperator& rho0, const DensityOperator& rho1) {
    return arccos_clamped(fidelity_sqrt(rho0, rho1));
}

double affinity(const DensityOperator& rho0, const DensityOperator& rho1) {
    if (rho0.dim() != rho1.dim())
        throw DimensionMismatch("state dimensions differ");
    return std::clamp((rho0.sqrt() * rho1.sqrt()).trace().real(), 0.0, 1.0);
}

double wy_distance(const DensityOperator& rho0, const DensityOperator& rho1) {
    return arccos_clamped(affinity(rho0, rho1));
}

} // namespace qsl
