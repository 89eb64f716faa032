#ifndef QSL_GEOMETRY_HPP
#define QSL_GEOMETRY_HPP

#include <vector>

#include "qsl/states.hpp"

namespace qsl {

/// Rank-n orthogonal projector.
struct Projector {
    Matrix matrix;
    int rank;

    static Projector from_matrix(const Matrix& m, double tol = 1e-8);
    int dim() const { return static_cast<int>(matrix.rows()); }
};

/// Orthonormal column family spanning the support of a projector (N x n).
Matrix frame_of(const Projector& p);

struct PrincipalAngleSet {
    std::vector<double> angles;  // in [0, pi/2], descending
};

/// arccos sqrt(tr rho0 rho1) for rank-1 states.
double fs_distance_pure(const DensityOperator& rho0, const DensityOperator& rho1);

/// sqrt(tr arccos^2 |P0 P1| - (pi^2/4)(N - n))
double grassmann_distance(const Projector& p0, const Projector& p1);

/// Frame form sqrt(tr arccos^2 |F0^dagger F1|); agrees with grassmann_distance.
double grassmann_distance_frames(const Projector& p0, const Projector& p1);

PrincipalAngleSet principal_angles(const Projector& p0, const Projector& p1);

/// Generator H horizontal at P0 with spectrum in [-pi/2, pi/2] such that
/// exp(-iHt) P0 exp(iHt) runs from P0 to P1 at unit parameter with constant
/// speed equal to the geodesic distance.
struct GrassmannGeodesic {
    Matrix generator;
    Projector start;
    double length;

    Projector at(double t) const;
};

GrassmannGeodesic grassmann_geodesic(const Projector& p0, const Projector& p1);

/// sqrt(sum_j p_j dist_G^2(P_{j;0}, P_{j;1})) over eigenvalue-matched
/// nonzero eigenspaces of isospectral states.
double product_grassmann_distance(const DensityOperator& rho0, const DensityOperator& rho1,
                                  double iso_tol = 1e-8);

/// Fubini-Study distance of the Plucker images: arccos |det F0^dagger F1|.
double plucker_distance(const Projector& p0, const Projector& p1);

/// Weighted Plucker analogue of product_grassmann_distance:
/// sqrt(sum_j p_j arccos^2 |det F_{j;0}^dagger F_{j;1}|).
double product_plucker_distance(const DensityOperator& rho0, const DensityOperator& rho1,
                                double iso_tol = 1e-8);

/// tr|sqrt(rho0) sqrt(rho1)|, computed as tr sqrt(sqrt(rho0) rho1 sqrt(rho0)).
double fidelity_sqrt(const DensityOperator& rho0, const DensityOperator& rho1);

double bures_angle(const DensityOperator& rho0, const DensityOperator& rho1);

/// tr(sqrt(rho0) sqrt(rho1))
double affinity(const DensityOperator& rho0, const DensityOperator& rho1);

double wy_distance(const DensityOperator& rho0, const DensityOperator& rho1);

/// True when the descending eigenvalue lists agree within iso_tol with equal
/// multiplicities.
bool isospectral(const DensityOperator& rho0, const DensityOperator& rho1,
                 double iso_tol = 1e-8);

} // namespace qsl

#endif
