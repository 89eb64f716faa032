#include "qsl/qsl_bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace qsl {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_delta_e(double delta_e) {
    if (delta_e <= 0.0)
        throw NonpositiveUncertainty("average energy uncertainty must be positive");
}

bool orthogonal_supports(const DensityOperator& rho0, const DensityOperator& rho1) {
    return (rho0.support_projector() * rho1.support_projector()).norm() < 1e-10;
}

// Detects the commuting nondegenerate involution case and returns the exact
// orbit distance (pi/2) sqrt(sum_{j != sigma(j)} p_j) when it applies.
std::optional<double> involution_case_distance(const DensityOperator& rho0,
                                               const DensityOperator& rho1) {
    const int dim = rho0.dim();
    if (static_cast<int>(rho0.spectrum().size()) != dim) return std::nullopt;
    if ((rho0.matrix() * rho1.matrix() - rho1.matrix() * rho0.matrix()).norm() > 1e-10)
        return std::nullopt;

    // Express rho1 in the eigenbasis of rho0; commuting nondegenerate states
    // must be simultaneously diagonal there.
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho0.matrix());
    Matrix rho1_basis = es.eigenvectors().adjoint() * rho1.matrix() * es.eigenvectors();
    if ((rho1_basis - Matrix(rho1_basis.diagonal().asDiagonal())).norm() > 1e-9)
        return std::nullopt;

    std::vector<int> sigma(dim, -1);
    for (int j = 0; j < dim; ++j) {
        double pj = es.eigenvalues()(j);
        for (int k = 0; k < dim; ++k) {
            if (std::abs(rho1_basis(k, k).real() - pj) < 1e-9) {
                sigma[j] = k;
                break;
            }
        }
        if (sigma[j] < 0) return std::nullopt;
    }
    for (int j = 0; j < dim; ++j)
        if (sigma[sigma[j]] != j) return std::nullopt;

    double moved = 0.0;
    for (int j = 0; j < dim; ++j)
        if (sigma[j] != j) moved += es.eigenvalues()(j);
    return kHalfPi * std::sqrt(moved);
}

} // namespace

double tau_mt(const DensityOperator& rho0, const DensityOperator& rho1, double delta_e) {
    check_delta_e(delta_e);
    return fs_distance_pure(rho0, rho1) / delta_e;
}

double tau_g(const DensityOperator& rho0, const DensityOperator& rho1, double delta_e) {
    check_delta_e(delta_e);
    return product_grassmann_distance(rho0, rho1) / delta_e;
}

double tau_fs(const DensityOperator& rho0, const DensityOperator& rho1, double delta_e) {
    check_delta_e(delta_e);
    return product_plucker_distance(rho0, rho1) / delta_e;
}

double tau_u(const DensityOperator& rho0, const DensityOperator& rho1, double delta_e) {
    check_delta_e(delta_e);
    return bures_angle(rho0, rho1) / delta_e;
}

double tau_frowis(const DensityOperator& rho0, const DensityOperator& rho1,
                  double qfi_root_average) {
    if (qfi_root_average <= 0.0)
        throw NonpositiveUncertainty("average root Fisher information must be positive");
    return 2.0 * bures_angle(rho0, rho1) / qfi_root_average;
}

TauWyResult tau_wy(const DensityOperator& rho0, const DensityOperator& rho1,
                   double delta_e) {
    check_delta_e(delta_e);
    double value = wy_distance(rho0, rho1) / delta_e;
    if (!rho0.is_faithful())
        return {value, false, "initial state is not faithful"};
    const auto& vals = rho0.spectrum().eigenvalues;
    double width = vals.front() - vals.back();
    if (width > 3.0 * vals.back())
        return {value, false, "spectral width exceeds three times the smallest eigenvalue"};
    return {value, true, ""};
}

TauPResult tau_p(const DensityOperator& rho0, const DensityOperator& rho1,
                 double delta_e, const GpDistanceOptions& opts) {
    check_delta_e(delta_e);
    if (!isospectral(rho0, rho1))
        throw NotIsospectral("states are not isospectral");

    TauPResult res;
    double lower_dist = product_grassmann_distance(rho0, rho1);
    res.lower = lower_dist / delta_e;

    if (orthogonal_supports(rho0, rho1)) {
        res.exact = kHalfPi / delta_e;
    } else if (rho0.spectrum().size() <= 2) {
        // Two distinct eigenvalues: dist = sqrt(p1 + p2) dist_G(P1;0, P1;1).
        double p1 = rho0.spectrum().eigenvalues[0];
        double p2 = rho0.spectrum().size() == 2 ? rho0.spectrum().eigenvalues[1] : 0.0;
        Projector a{rho0.spectrum().projectors[0], rho0.spectrum().multiplicities[0]};
        Projector b{rho1.spectrum().projectors[0], rho1.spectrum().multiplicities[0]};
        res.exact = std::sqrt(std::max(0.0, p1 + p2)) * grassmann_distance(a, b) / delta_e;
    } else if (auto d = involution_case_distance(rho0, rho1)) {
        res.exact = *d / delta_e;
    }

    if (res.exact) {
        res.upper = *res.exact;
        res.upper_converged = true;
    } else {
        GpDistanceResult gp = gp_distance_numeric(rho0, rho1, opts);
        res.upper = gp.upper / delta_e;
        res.upper_converged = gp.converged;
    }
    if (res.upper < res.lower) res.upper = res.lower;  // roundoff guard
    return res;
}

BoundReport compare_bounds(const DensityOperator& rho0, const DensityOperator& rho1,
                           double delta_e, const CompareOptions& opts) {
    if (rho0.dim() != rho1.dim())
        throw DimensionMismatch("state dimensions differ");
    check_delta_e(delta_e);

    BoundReport report;
    report.delta_e = delta_e;
    report.isospectral = isospectral(rho0, rho1);

    if (rho0.is_pure() && rho1.is_pure())
        report.tau_mt = tau_mt(rho0, rho1, delta_e);

    report.tau_u = tau_u(rho0, rho1, delta_e);
    if (!report.isospectral)
        report.warnings.push_back(
            "states are not isospectral: no unitary evolution connects them; "
            "tau_u reported for reference only");

    report.tau_wy = tau_wy(rho0, rho1, delta_e);

    if (report.isospectral) {
        report.tau_g = tau_g(rho0, rho1, delta_e);
        report.tau_fs = tau_fs(rho0, rho1, delta_e);
        if (opts.shoot_tau_p) {
            report.tau_p = tau_p(rho0, rho1, delta_e, opts.gp);
        } else {
            TauPResult partial;
            partial.lower = *report.tau_g;
            partial.upper = std::numeric_limits<double>::infinity();
            report.tau_p = partial;
        }
        // Internal ordering invariants.
        if (*report.tau_fs > *report.tau_g + 1e-8)
            throw Error("internal ordering violation: tau_fs > tau_g");
        if (report.tau_p && *report.tau_g > report.tau_p->upper + 1e-8)
            throw Error("internal ordering violation: tau_g > tau_p upper bound");
    }
    return report;
}

} // namespace qsl
