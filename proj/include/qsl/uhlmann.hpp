#ifndef QSL_UHLMANN_HPP
#define QSL_UHLMANN_HPP

#include "qsl/dynamics.hpp"

namespace qsl {

/// Uhlmann bundle element: N x n operator W with W^dagger W full rank and
/// unit trace; W W^dagger is the projected density operator.
struct Amplitude {
    Matrix w;            // N x n
    int reference_rank;  // n

    DensityOperator project() const;
};

/// Canonical amplitude: support eigenvectors scaled by sqrt(p).
Amplitude amplitude_of(const DensityOperator& rho);

struct HorizontalityResult {
    bool horizontal;
    double residual;  // ||Wdot^dagger W - W^dagger Wdot||_F
};

HorizontalityResult is_horizontal(const Amplitude& w, const Matrix& wdot,
                                  double tol = 1e-9);

/// Solves W^dagger Wdot - Wdot^dagger W = {X, W^dagger W} for skew-Hermitian
/// X, entrywise in the Gram eigenbasis.
Matrix connection_solve(const Amplitude& w, const Matrix& wdot);

/// Horizontal lift of a unitary trajectory: Schroedinger propagation of the
/// canonical amplitude of the initial state, adjusted fiberwise step by step
/// so the velocity stays horizontal.
std::vector<Amplitude> horizontal_lift(const Trajectory& traj);

/// sqrt(F(H, rho)/4): the Bures speed of the state under the generator.
double bures_speed(const Matrix& h, const DensityOperator& rho);

/// Time-independent Hamiltonian generating a Bures geodesic through rho0:
/// block off-diagonal with respect to the support, with
/// Pi H (1 - Pi) H Pi = beta Pi. Requires 2 rank(rho0) <= N.
Matrix bures_geodesic_hamiltonian(const DensityOperator& rho0, double beta);

struct TightnessReport {
    double max_deviation;
    bool saturable;
};

/// Max over samples of || Pi_t H_t Pi_t - alpha_t Pi_t ||_F with the best
/// scalar alpha_t; zero deviation is necessary for the Uhlmann dispersion
/// estimate to saturate.
TightnessReport uhlmann_tightness_check(const Trajectory& traj, double tol = 1e-9);

} // namespace qsl

#endif
