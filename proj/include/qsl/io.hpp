#ifndef QSL_IO_HPP
#define QSL_IO_HPP

#include <string>

#include "qsl/qsl_bounds.hpp"

namespace qsl::io {

/// Structured matrix file: {"dim": N, "kind": "density"|"hermitian",
/// "matrix": N x N array of [re, im] pairs}. Entries are serialized as
/// decimal numbers with 17 significant digits so round trips are bit exact.
struct MatrixFile {
    int dim = 0;
    std::string kind;  // "density" or "hermitian"
    Matrix matrix;
};

MatrixFile read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const MatrixFile& mf);

DensityOperator load_density(const std::string& path, double tol = 1e-10);
Matrix load_hermitian(const std::string& path, double tol = 1e-10);

/// Schedule file: {"type": "constant", "hamiltonian": <path>} or
/// {"type": "piecewise", "knots": [[t, <path>], ...]} with midpoint-held
/// interpolation (the knot value holds until the next knot time). Paths are
/// resolved relative to the schedule file's directory.
HamiltonianSchedule load_schedule(const std::string& path);

std::string bound_report_json(const BoundReport& report);
std::string bound_report_csv(const BoundReport& report);

/// Columns: t, interleaved re/im of the state entries (row major), delta_e,
/// then one speed column per metric (nan where the metric's precondition
/// fails, e.g. the pure-state speed on a mixed state).
std::string trajectory_csv(const Trajectory& traj);
std::string trajectory_json(const Trajectory& traj);

std::string gp_result_json(const GpDistanceResult& res, const Trajectory& best_curve);

void write_text_file(const std::string& path, const std::string& content);

} // namespace qsl::io

#endif
