#ifndef QSL_QSL_BOUNDS_HPP
#define QSL_QSL_BOUNDS_HPP

#include <optional>
#include <string>
#include <vector>

#include "qsl/dynamics.hpp"
#include "qsl/uhlmann.hpp"

namespace qsl {

struct TauWyResult {
    double value;
    bool valid;
    std::string reason;  // empty when valid
};

struct TauPResult {
    double lower;
    double upper;
    std::optional<double> exact;
    bool upper_converged = false;
};

struct BoundReport {
    double delta_e = 0.0;
    bool isospectral = false;
    std::optional<double> tau_mt;     // pure states only
    std::optional<double> tau_g;      // isospectral only
    std::optional<double> tau_fs;     // isospectral only
    std::optional<double> tau_u;
    TauWyResult tau_wy{0.0, false, ""};
    std::optional<TauPResult> tau_p;  // isospectral only
    std::vector<std::string> warnings;
};

double tau_mt(const DensityOperator& rho0, const DensityOperator& rho1, double delta_e);
double tau_g(const DensityOperator& rho0, const DensityOperator& rho1, double delta_e);
double tau_fs(const DensityOperator& rho0, const DensityOperator& rho1, double delta_e);
double tau_u(const DensityOperator& rho0, const DensityOperator& rho1, double delta_e);

/// 2 arccos tr|sqrt(rho0) sqrt(rho1)| / <sqrt(F)>; the caller supplies the
/// trajectory average of the root quantum Fisher information.
double tau_frowis(const DensityOperator& rho0, const DensityOperator& rho1,
                  double qfi_root_average);

/// arccos(affinity)/delta_e with the spectral-width validity gate: valid
/// when rho0 is faithful and width(spec) <= 3 min(spec).
TauWyResult tau_wy(const DensityOperator& rho0, const DensityOperator& rho1,
                   double delta_e);

/// Interval bound for the isospectral-orbit distance: lower from the product
/// Grassmannian embedding, upper from geodesic shooting; exact values for
/// the proven special cases (two distinct eigenvalues, orthogonal supports,
/// commuting involution pairs).
TauPResult tau_p(const DensityOperator& rho0, const DensityOperator& rho1,
                 double delta_e, const GpDistanceOptions& opts = {});

struct CompareOptions {
    bool shoot_tau_p = true;
    GpDistanceOptions gp;
};

BoundReport compare_bounds(const DensityOperator& rho0, const DensityOperator& rho1,
                           double delta_e, const CompareOptions& opts = {});

} // namespace qsl

#endif
