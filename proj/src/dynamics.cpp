#include "qsl/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qsl {

namespace {

// Eigenbasis bookkeeping for a state: columns of `basis` are eigenvectors
// grouped cluster by cluster in descending eigenvalue order; `values` holds
// the eigenvalue per column and `cluster` the cluster index per column.
struct EigenFrame {
    Matrix basis;
    Eigen::VectorXd values;
    std::vector<int> cluster;
};

EigenFrame eigenframe(const DensityOperator& rho) {
    const SpectralDecomposition& sd = rho.spectrum();
    const int dim = rho.dim();
    EigenFrame frame;
    frame.basis.resize(dim, dim);
    frame.values.resize(dim);
    frame.cluster.resize(dim);
    int col = 0;
    for (std::size_t j = 0; j < sd.size(); ++j) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(sd.projectors[j]);
        Matrix support = es.eigenvectors().rightCols(sd.multiplicities[j]);
        for (int k = 0; k < sd.multiplicities[j]; ++k, ++col) {
            frame.basis.col(col) = support.col(k);
            frame.values(col) = std::max(0.0, sd.eigenvalues[j]);
            frame.cluster[col] = static_cast<int>(j);
        }
    }
    return frame;
}

// Zeroes the vertical (same-cluster) entries of a matrix expressed in an
// eigenframe basis.
Matrix horizontal_part_in_frame(const Matrix& m, const EigenFrame& frame) {
    Matrix out = m;
    const int dim = static_cast<int>(m.rows());
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
            if (frame.cluster[a] == frame.cluster[b]) out(a, b) = 0.0;
    return out;
}

// Right-hand side of the Heisenberg-picture geodesic equation, expressed in
// the initial eigenframe: hdot_{ab} = i (d_b - d_a)/(d_a + d_b) (h^2)_{ab}
// on cross-cluster entries, zero on same-cluster entries.
Matrix geodesic_rhs(const Matrix& h, const EigenFrame& frame) {
    Matrix sq = h * h;
    const int dim = static_cast<int>(h.rows());
    Matrix out = Matrix::Zero(dim, dim);
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
            if (frame.cluster[a] == frame.cluster[b]) continue;
            double da = frame.values(a), db = frame.values(b);
            out(a, b) = Complex(0, 1) * (db - da) / (da + db) * sq(a, b);
        }
    }
    return out;
}

Matrix rk4_step(const Matrix& h, double dt, const EigenFrame& frame) {
    Matrix k1 = geodesic_rhs(h, frame);
    Matrix k2 = geodesic_rhs(h + 0.5 * dt * k1, frame);
    Matrix k3 = geodesic_rhs(h + 0.5 * dt * k2, frame);
    Matrix k4 = geodesic_rhs(h + dt * k3, frame);
    return h + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct ShootResult {
    Matrix final_unitary;        // in the eigenframe basis
    std::vector<Matrix> heis;    // Heisenberg generators at sample times
    std::vector<Matrix> unitaries;
};

ShootResult shoot_in_frame(Matrix h0, const EigenFrame& frame, double total_time,
                           int steps, bool keep_samples) {
    const int dim = static_cast<int>(h0.rows());
    double dt = total_time / steps;
    Matrix u = Matrix::Identity(dim, dim);
    Matrix h = std::move(h0);
    ShootResult res;
    if (keep_samples) {
        res.heis.reserve(steps + 1);
        res.unitaries.reserve(steps + 1);
        res.heis.push_back(h);
        res.unitaries.push_back(u);
    }
    for (int k = 0; k < steps; ++k) {
        Matrix h_mid = rk4_step(h, 0.5 * dt, frame);
        h_mid = horizontal_part_in_frame(h_mid, frame);
        u = u * expm_skew(Complex(0, -dt) * h_mid);
        h = rk4_step(h, dt, frame);
        h = horizontal_part_in_frame(h, frame);
        if (keep_samples) {
            res.heis.push_back(h);
            res.unitaries.push_back(u);
        }
    }
    res.final_unitary = u;
    return res;
}

double horizontality_residual(const Matrix& a, const DensityOperator& rho) {
    return split_observable(a, rho).vertical.norm();
}

// Hand-rolled Nelder-Mead; derivative-free, deterministic given the start
// simplex.
struct SimplexResult {
    Eigen::VectorXd best;
    double value;
};

SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                          const Eigen::VectorXd& x0, double step, int max_iter,
                          double ftol) {
    const int n = static_cast<int>(x0.size());
    std::vector<Eigen::VectorXd> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    for (int i = 0; i < n; ++i) pts[i + 1](i) += step;
    for (int i = 0; i <= n; ++i) vals[i] = f(pts[i]);

    auto order = [&] {
        std::vector<int> idx(n + 1);
        for (int i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
        std::vector<Eigen::VectorXd> p2(n + 1);
        std::vector<double> v2(n + 1);
        for (int i = 0; i <= n; ++i) { p2[i] = pts[idx[i]]; v2[i] = vals[idx[i]]; }
        pts = std::move(p2);
        vals = std::move(v2);
    };

    for (int it = 0; it < max_iter; ++it) {
        order();
        if (vals[n] - vals[0] < ftol) break;
        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i < n; ++i) centroid += pts[i];
        centroid /= n;

        Eigen::VectorXd xr = centroid + (centroid - pts[n]);
        double fr = f(xr);
        if (fr < vals[0]) {
            Eigen::VectorXd xe = centroid + 2.0 * (centroid - pts[n]);
            double fe = f(xe);
            if (fe < fr) { pts[n] = xe; vals[n] = fe; }
            else { pts[n] = xr; vals[n] = fr; }
        } else if (fr < vals[n - 1]) {
            pts[n] = xr; vals[n] = fr;
        } else {
            Eigen::VectorXd xc = centroid + 0.5 * (pts[n] - centroid);
            double fc = f(xc);
            if (fc < vals[n]) { pts[n] = xc; vals[n] = fc; }
            else {
                for (int i = 1; i <= n; ++i) {
                    pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
                    vals[i] = f(pts[i]);
                }
            }
        }
    }
    order();
    return {pts[0], vals[0]};
}

} // namespace

HamiltonianSchedule HamiltonianSchedule::constant(const Matrix& h) {
    Matrix copy = h;
    return {[copy](double) { return copy; }, "constant"};
}

Trajectory evolve(const DensityOperator& rho0, const HamiltonianSchedule& schedule,
                  double t0, double t1, int steps) {
    if (steps < 1)
        throw ValidationError("steps must be >= 1");
    double dt = (t1 - t0) / steps;
    Trajectory traj;
    traj.times.reserve(steps + 1);
    traj.states.reserve(steps + 1);
    traj.hamiltonians.reserve(steps + 1);

    const int dim = rho0.dim();
    Matrix u = Matrix::Identity(dim, dim);
    traj.times.push_back(t0);
    traj.states.push_back(rho0);
    traj.hamiltonians.push_back(hermitize(schedule.at(t0)));
    for (int k = 0; k < steps; ++k) {
        double tm = t0 + (k + 0.5) * dt;
        Matrix h = hermitize(schedule.at(tm));
        u = expm_skew(Complex(0, -dt) * h) * u;
        double tk = t0 + (k + 1) * dt;
        Matrix rho = u * rho0.matrix() * u.adjoint();
        traj.times.push_back(tk);
        traj.states.push_back(DensityOperator::validate(rho, 1e-8));
        traj.hamiltonians.push_back(hermitize(schedule.at(tk)));
    }
    return traj;
}

double average_energy_uncertainty(const Trajectory& traj) {
    if (traj.size() == 0)
        throw EmptyTrajectory("trajectory has no samples");
    if (traj.size() == 1)
        return std::sqrt(variance(traj.hamiltonians[0], traj.states[0]));
    double total = 0.0;
    double span = traj.times.back() - traj.times.front();
    for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
        double a = std::sqrt(variance(traj.hamiltonians[k], traj.states[k]));
        double b = std::sqrt(variance(traj.hamiltonians[k + 1], traj.states[k + 1]));
        total += 0.5 * (a + b) * (traj.times[k + 1] - traj.times[k]);
    }
    return total / span;
}

MetricTag metric_tag_from_string(const std::string& name) {
    if (name == "fs-pure") return MetricTag::FsPure;
    if (name == "grassmann-product") return MetricTag::GrassmannProduct;
    if (name == "bures") return MetricTag::Bures;
    if (name == "wy") return MetricTag::WignerYanase;
    if (name == "gp") return MetricTag::Gp;
    throw ValidationError("unknown metric tag: " + name);
}

std::string metric_tag_name(MetricTag tag) {
    switch (tag) {
        case MetricTag::FsPure: return "fs-pure";
        case MetricTag::GrassmannProduct: return "grassmann-product";
        case MetricTag::Bures: return "bures";
        case MetricTag::WignerYanase: return "wy";
        case MetricTag::Gp: return "gp";
    }
    return "?";
}

double metric_speed(const DensityOperator& rho, const Matrix& h, MetricTag tag) {
    switch (tag) {
        case MetricTag::FsPure:
            if (!rho.is_pure())
                throw NotPure("fs-pure speed requires a rank-1 state");
            return std::sqrt(variance(h, rho));
        case MetricTag::GrassmannProduct:
            return std::sqrt(j_functional(h, rho));
        case MetricTag::Bures:
            return 0.5 * std::sqrt(quantum_fisher_information(h, rho));
        case MetricTag::WignerYanase:
            if (!rho.is_faithful())
                throw ValidationError("wy speed requires a faithful state");
            return std::sqrt(2.0 * skew_information(h, rho));
        case MetricTag::Gp:
            return std::sqrt(variance(split_observable(h, rho).horizontal, rho));
    }
    throw Error("unreachable");
}

double curve_length(const Trajectory& traj, MetricTag tag) {
    if (traj.size() == 0)
        throw EmptyTrajectory("trajectory has no samples");
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < traj.size(); ++k) {
        double a = metric_speed(traj.states[k], traj.hamiltonians[k], tag);
        double b = metric_speed(traj.states[k + 1], traj.hamiltonians[k + 1], tag);
        total += 0.5 * (a + b) * (traj.times[k + 1] - traj.times[k]);
    }
    return total;
}

Matrix involution_hamiltonian(const DensityOperator& rho0, const std::vector<int>& sigma) {
    const int dim = rho0.dim();
    if (static_cast<int>(sigma.size()) != dim)
        throw NotInvolution("permutation size differs from dimension");
    for (int j = 0; j < dim; ++j) {
        if (sigma[j] < 0 || sigma[j] >= dim || sigma[sigma[j]] != j)
            throw NotInvolution("permutation is not an involution");
    }
    if (static_cast<int>(rho0.spectrum().size()) != dim)
        throw Degenerate("state must be nondegenerate");

    EigenFrame frame = eigenframe(rho0);
    Matrix h = Matrix::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        int k = sigma[j];
        if (k <= j) continue;  // one term per 2-cycle
        h += Complex(0, 1) * (frame.basis.col(k) * frame.basis.col(j).adjoint() -
                              frame.basis.col(j) * frame.basis.col(k).adjoint());
    }
    return h;
}

Trajectory gp_geodesic_shoot(const DensityOperator& rho0, const Matrix& a0,
                             double total_time, int steps) {
    if (steps < 1)
        throw ValidationError("steps must be >= 1");
    Matrix a = hermitize(a0);
    if (horizontality_residual(a, rho0) >= 1e-9)
        throw NotHorizontal("initial tangent generator is not horizontal at rho0");

    EigenFrame frame = eigenframe(rho0);
    Matrix h0 = frame.basis.adjoint() * a * frame.basis;
    h0 = horizontal_part_in_frame(h0, frame);
    ShootResult res = shoot_in_frame(h0, frame, total_time, steps, true);

    Matrix d = frame.values.cast<Complex>().asDiagonal();
    Trajectory traj;
    double dt = total_time / steps;
    for (int k = 0; k <= steps; ++k) {
        const Matrix& u = res.unitaries[k];
        Matrix rho = frame.basis * (u * d * u.adjoint()) * frame.basis.adjoint();
        Matrix ham = frame.basis * (u * res.heis[k] * u.adjoint()) * frame.basis.adjoint();
        traj.times.push_back(k * dt);
        traj.states.push_back(DensityOperator::validate(rho, 1e-8));
        traj.hamiltonians.push_back(hermitize(ham));
    }
    return traj;
}

GpDistanceResult gp_distance_numeric(const DensityOperator& rho0, const DensityOperator& rho1,
                                     const GpDistanceOptions& opts) {
    if (!isospectral(rho0, rho1))
        throw NotIsospectral("states are not isospectral");

    GpDistanceResult result;
    result.lower = product_grassmann_distance(rho0, rho1);
    if (result.lower == 0.0 && (rho0.matrix() - rho1.matrix()).norm() < 1e-10) {
        result.upper = 0.0;
        result.converged = true;
        result.best_tangent = Matrix::Zero(rho0.dim(), rho0.dim());
        return result;
    }

    EigenFrame frame = eigenframe(rho0);
    const int dim = rho0.dim();
    Matrix d = frame.values.cast<Complex>().asDiagonal();
    Matrix target = frame.basis.adjoint() * rho1.matrix() * frame.basis;

    // Independent real parameters: (re, im) of every cross-cluster entry
    // above the diagonal.
    std::vector<std::pair<int, int>> slots;
    for (int a = 0; a < dim; ++a)
        for (int b = a + 1; b < dim; ++b)
            if (frame.cluster[a] != frame.cluster[b]) slots.push_back({a, b});
    const int nparams = 2 * static_cast<int>(slots.size());

    auto unpack = [&](const Eigen::VectorXd& x) {
        Matrix h = Matrix::Zero(dim, dim);
        for (std::size_t s = 0; s < slots.size(); ++s) {
            Complex v(x(2 * s), x(2 * s + 1));
            h(slots[s].first, slots[s].second) = v;
            h(slots[s].second, slots[s].first) = std::conj(v);
        }
        return h;
    };

    auto defect = [&](const Eigen::VectorXd& x) {
        Matrix h0 = unpack(x);
        ShootResult res = shoot_in_frame(h0, frame, 1.0, opts.steps, false);
        return (res.final_unitary * d * res.final_unitary.adjoint() - target).norm();
    };

    auto length_of = [&](const Eigen::VectorXd& x) {
        Matrix h0 = unpack(x);
        return std::sqrt(std::max(0.0, (h0 * h0 * d).trace().real()));
    };

    // Initial guess from the eigenbasis-matching unitary: Omega D Omega^dagger
    // equals the target, and the horizontal part of i log(Omega) is a tangent
    // whose constant-generator curve reaches nearby states.
    EigenFrame frame1 = eigenframe(rho1);
    Matrix omega = frame.basis.adjoint() * frame1.basis;
    Eigen::ComplexEigenSolver<Matrix> ces(omega);
    Matrix k_init = Matrix::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        double theta = std::arg(ces.eigenvalues()(j));
        Vector v = ces.eigenvectors().col(j);
        v.normalize();
        k_init -= theta * (v * v.adjoint());
    }
    k_init = 0.5 * (k_init + k_init.adjoint()).eval();
    k_init = horizontal_part_in_frame(k_init, frame);

    // Second candidate: half the sum of the per-eigenspace Grassmann geodesic
    // generators. Each cluster pair contributes the rotation taking its
    // eigenspace to the target one; rotations are counted from both sides of
    // each plane, hence the factor 1/2. Exact for two-cluster states and a
    // good starting point elsewhere, and immune to the branch ambiguity of
    // the logarithm above.
    Matrix k_planes = Matrix::Zero(dim, dim);
    {
        const SpectralDecomposition& sd0 = rho0.spectrum();
        const SpectralDecomposition& sd1 = rho1.spectrum();
        for (std::size_t j = 0; j < sd0.size(); ++j) {
            Projector a{sd0.projectors[j], sd0.multiplicities[j]};
            Projector b{sd1.projectors[j], sd1.multiplicities[j]};
            k_planes += 0.5 * grassmann_geodesic(a, b).generator;
        }
    }
    k_planes = frame.basis.adjoint() * k_planes * frame.basis;
    k_planes = horizontal_part_in_frame(0.5 * (k_planes + k_planes.adjoint()).eval(), frame);

    auto pack = [&](const Matrix& k) {
        Eigen::VectorXd x(nparams);
        for (std::size_t s = 0; s < slots.size(); ++s) {
            Complex v = k(slots[s].first, slots[s].second);
            x(2 * s) = v.real();
            x(2 * s + 1) = v.imag();
        }
        return x;
    };
    const Eigen::VectorXd inits[2] = {pack(k_planes), pack(k_init)};

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    double best_upper = std::numeric_limits<double>::infinity();
    double best_defect = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_x;
    for (int r = 0; r < opts.restarts; ++r) {
        Eigen::VectorXd x0 = inits[r % 2];
        double scale = std::max(0.5, x0.norm());
        if (r > 1)
            for (int i = 0; i < nparams; ++i)
                x0(i) += 0.3 * scale * gauss(rng) * r / opts.restarts;
        SimplexResult sr = nelder_mead(defect, x0, 0.1 * scale, opts.max_iter, 1e-12);
        bool hit = sr.value < opts.endpoint_tol;
        double len = length_of(sr.best);
        if (hit && len < best_upper) {
            best_upper = len;
            best_defect = sr.value;
            best_x = sr.best;
            result.converged = true;
        }
        if (!result.converged && sr.value < best_defect) {
            best_defect = sr.value;
            best_upper = len;
            best_x = sr.best;
        }
    }

    result.upper = best_upper;
    result.best_defect = best_defect;
    if (best_x.size() > 0)
        result.best_tangent = frame.basis * unpack(best_x) * frame.basis.adjoint();
    else
        result.best_tangent = Matrix::Zero(dim, dim);
    return result;
}

HamiltonianSchedule parallel_transport_projection(const HamiltonianSchedule& schedule,
                                                  const Trajectory& traj) {
    if (traj.size() == 0)
        throw EmptyTrajectory("trajectory has no samples");
    auto times = traj.times;
    auto states = traj.states;
    auto base = schedule.at;
    auto eval = [times, states, base](double t) {
        auto it = std::lower_bound(times.begin(), times.end(), t);
        std::size_t idx = it - times.begin();
        if (idx >= times.size()) idx = times.size() - 1;
        if (idx > 0 && std::abs(times[idx - 1] - t) < std::abs(times[idx] - t)) --idx;
        return split_observable(hermitize(base(t)), states[idx]).horizontal;
    };
    return {eval, "parallel-transported(" + schedule.descriptor + ")"};
}

} // namespace qsl
