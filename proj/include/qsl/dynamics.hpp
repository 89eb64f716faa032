#ifndef QSL_DYNAMICS_HPP
#define QSL_DYNAMICS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qsl/geometry.hpp"

namespace qsl {

struct HamiltonianSchedule {
    std::function<Matrix(double)> at;
    std::string descriptor = "custom";

    static HamiltonianSchedule constant(const Matrix& h);
};

/// Time-indexed samples of a von Neumann evolution. Spectra are constant
/// along the trajectory up to floating point since propagation is by exact
/// per-step unitaries.
struct Trajectory {
    std::vector<double> times;
    std::vector<DensityOperator> states;
    std::vector<Matrix> hamiltonians;

    std::size_t size() const { return times.size(); }
};

/// Midpoint unitary stepping: rho_{k+1} = U_k rho_k U_k^dagger with
/// U_k = exp(-i H(midpoint) dt).
Trajectory evolve(const DensityOperator& rho0, const HamiltonianSchedule& schedule,
                  double t0, double t1, int steps);

/// Trapezoidal time average of Delta(H_t, rho_t).
double average_energy_uncertainty(const Trajectory& traj);

enum class MetricTag { FsPure, GrassmannProduct, Bures, WignerYanase, Gp };

MetricTag metric_tag_from_string(const std::string& name);
std::string metric_tag_name(MetricTag tag);

/// Closed-form metric speeds: Delta(H,rho); sqrt(J); sqrt(F/4); sqrt(2 I);
/// Delta(H^h, rho).
double metric_speed(const DensityOperator& rho, const Matrix& h, MetricTag tag);

double curve_length(const Trajectory& traj, MetricTag tag);

/// Example-3 style generator for an involution sigma of the eigenvector
/// indices of a nondegenerate state. sigma is 0-based.
Matrix involution_hamiltonian(const DensityOperator& rho0, const std::vector<int>& sigma);

/// Integrates the Heisenberg-picture geodesic equation for the isospectral
/// metric from an initial horizontal tangent generator a0, then reconstructs
/// the Schroedinger-picture trajectory.
Trajectory gp_geodesic_shoot(const DensityOperator& rho0, const Matrix& a0,
                             double total_time, int steps);

struct GpDistanceOptions {
    int restarts = 8;
    int steps = 400;
    int max_iter = 500;
    double endpoint_tol = 1e-6;
    std::uint64_t seed = 0;
};

struct GpDistanceResult {
    double lower = 0.0;
    double upper = 0.0;
    bool converged = false;
    double best_defect = 0.0;
    Matrix best_tangent;  // initial horizontal generator of the best curve
};

/// Lower bound from the isometric embedding into the product Grassmannian;
/// upper bound from geodesic shooting with derivative-free simplex search
/// over the initial horizontal tangent.
GpDistanceResult gp_distance_numeric(const DensityOperator& rho0, const DensityOperator& rho1,
                                     const GpDistanceOptions& opts = {});

/// Replaces the schedule by its horizontal component along the trajectory.
HamiltonianSchedule parallel_transport_projection(const HamiltonianSchedule& schedule,
                                                  const Trajectory& traj);

} // namespace qsl

#endif
