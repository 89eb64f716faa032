#include <cstdint>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qsl/io.hpp"

namespace {

using namespace qsl;

struct CommonArgs {
    std::string rho0_path, rho1_path, hamiltonian_path, schedule_path;
    double t0 = 0.0, t1 = 1.0;
    int steps = 200;
    double delta_e = 0.0;
    std::string metric = "bures";
    std::uint64_t seed = 0;
    double tol = 1e-6;
    std::string out_path;
    std::string format = "json";
};

void emit(const CommonArgs& args, const std::string& content) {
    if (args.out_path.empty())
        std::cout << content;
    else
        io::write_text_file(args.out_path, content);
}

HamiltonianSchedule resolve_schedule(const CommonArgs& args) {
    if (!args.schedule_path.empty())
        return io::load_schedule(args.schedule_path);
    if (!args.hamiltonian_path.empty())
        return HamiltonianSchedule::constant(io::load_hermitian(args.hamiltonian_path));
    throw ParseError("either --hamiltonian or --schedule is required");
}

int run_bounds(const CommonArgs& args) {
    DensityOperator rho0 = io::load_density(args.rho0_path);
    DensityOperator rho1 = io::load_density(args.rho1_path);

    double delta_e = args.delta_e;
    if (delta_e <= 0.0) {
        // No explicit uncertainty: measure it along the supplied evolution.
        HamiltonianSchedule schedule = resolve_schedule(args);
        Trajectory traj = evolve(rho0, schedule, args.t0, args.t1, args.steps);
        delta_e = average_energy_uncertainty(traj);
    }

    CompareOptions opts;
    opts.gp.seed = args.seed;
    opts.gp.endpoint_tol = args.tol;
    BoundReport report = compare_bounds(rho0, rho1, delta_e, opts);
    emit(args, args.format == "csv" ? io::bound_report_csv(report)
                                    : io::bound_report_json(report));
    return 0;
}

int run_evolve(const CommonArgs& args) {
    DensityOperator rho0 = io::load_density(args.rho0_path);
    HamiltonianSchedule schedule = resolve_schedule(args);
    Trajectory traj = evolve(rho0, schedule, args.t0, args.t1, args.steps);
    emit(args, args.format == "csv" ? io::trajectory_csv(traj)
                                    : io::trajectory_json(traj));
    return 0;
}

int run_geodesic(const CommonArgs& args) {
    DensityOperator rho0 = io::load_density(args.rho0_path);
    DensityOperator rho1 = io::load_density(args.rho1_path);
    GpDistanceOptions opts;
    opts.seed = args.seed;
    opts.endpoint_tol = args.tol;
    GpDistanceResult res = gp_distance_numeric(rho0, rho1, opts);
    Trajectory best = gp_geodesic_shoot(rho0, res.best_tangent, 1.0, opts.steps);
    if (args.format == "csv") {
        std::ostringstream os;
        os << "lower,upper,converged,best_defect,best_T\n"
           << res.lower << ',' << res.upper << ',' << (res.converged ? 1 : 0) << ','
           << res.best_defect << ',' << (best.size() ? best.times.back() : 0.0) << '\n';
        emit(args, os.str());
    } else {
        emit(args, io::gp_result_json(res, best));
    }
    return 0;
}

Matrix random_hermitian(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    Matrix a(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c)
            a(r, c) = Complex(gauss(rng), gauss(rng));
    return Matrix(0.5 * (a + a.adjoint()));
}

// Invariant suite over the supplied inputs plus seeded random observables.
int run_verify(const CommonArgs& args) {
    DensityOperator rho0 = io::load_density(args.rho0_path);
    std::mt19937_64 rng(args.seed);
    int failures = 0;
    auto check = [&failures](const std::string& name, bool ok) {
        std::cout << (ok ? "pass" : "FAIL") << "  " << name << '\n';
        if (!ok) ++failures;
    };

    const double slack = 1e-10;
    for (int trial = 0; trial < 20; ++trial) {
        Matrix a = random_hermitian(rho0.dim(), rng);
        double var = variance(a, rho0);
        double skew = skew_information(a, rho0);
        double j = j_functional(a, rho0);
        double fisher = quantum_fisher_information(a, rho0);
        ObservableSplit split = split_observable(a, rho0);
        double pythagoras = std::abs(var - variance(split.horizontal, rho0) -
                                     variance(split.vertical, rho0));
        if (trial == 0) {
            check("information chain I <= J <= Var", skew <= j + slack && j <= var + slack);
            check("J >= F/4", j >= fisher / 4.0 - slack);
            check("horizontal/vertical variance split", pythagoras < 1e-9);
            check("J equals Var of horizontal part",
                  std::abs(j - variance(split.horizontal, rho0)) < 1e-9);
        } else if (skew > j + slack || j > var + slack || j < fisher / 4.0 - slack ||
                   pythagoras > 1e-9) {
            check("random-draw invariant (trial " + std::to_string(trial) + ")", false);
        }
    }

    if (!args.rho1_path.empty()) {
        DensityOperator rho1 = io::load_density(args.rho1_path);
        check("affinity <= root fidelity",
              affinity(rho0, rho1) <= fidelity_sqrt(rho0, rho1) + slack);
        check("WY distance >= Bures angle",
              wy_distance(rho0, rho1) >= bures_angle(rho0, rho1) - slack);
        if (isospectral(rho0, rho1)) {
            double g = product_grassmann_distance(rho0, rho1);
            double fs = product_plucker_distance(rho0, rho1);
            check("Plucker <= Grassmann", fs <= g + slack);
        }
    }

    if (!args.hamiltonian_path.empty() || !args.schedule_path.empty()) {
        HamiltonianSchedule schedule = resolve_schedule(args);
        Trajectory traj = evolve(rho0, schedule, args.t0, args.t1, args.steps);
        bool spectra_ok = true;
        for (const DensityOperator& s : traj.states)
            spectra_ok = spectra_ok && isospectral(rho0, s, 1e-8);
        check("evolution preserves the spectrum", spectra_ok);
        double bures = curve_length(traj, MetricTag::Bures);
        double angle = bures_angle(traj.states.front(), traj.states.back());
        check("Bures length >= Bures angle", bures >= angle - 1e-8);
    }

    std::cout << (failures == 0 ? "verify: all checks passed\n"
                                : "verify: " + std::to_string(failures) + " check(s) failed\n");
    return failures == 0 ? 0 : 1;
}

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--rho0", args.rho0_path, "initial density operator file");
    cmd->add_option("--rho1", args.rho1_path, "target density operator file");
    cmd->add_option("--hamiltonian", args.hamiltonian_path, "Hermitian generator file");
    cmd->add_option("--schedule", args.schedule_path, "schedule file (constant/piecewise)");
    cmd->add_option("--t0", args.t0, "start time");
    cmd->add_option("--t1", args.t1, "end time");
    cmd->add_option("--steps", args.steps, "number of integration steps");
    cmd->add_option("--delta-e", args.delta_e, "time-averaged energy uncertainty");
    cmd->add_option("--metric", args.metric, "metric tag");
    cmd->add_option("--seed", args.seed, "seed for randomized search");
    cmd->add_option("--tol", args.tol, "tolerance for numeric searches");
    cmd->add_option("--out", args.out_path, "output file (stdout when omitted)");
    cmd->add_option("--format", args.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum speed limit bounds, unitary evolutions, and isospectral geodesics"};
    app.require_subcommand(1);

    CommonArgs args;
    CLI::App* bounds = app.add_subcommand("bounds", "compare speed-limit bounds for a state pair");
    CLI::App* evolve_cmd = app.add_subcommand("evolve", "integrate a von Neumann evolution");
    CLI::App* geodesic = app.add_subcommand("geodesic", "isospectral-orbit distance by geodesic shooting");
    CLI::App* verify = app.add_subcommand("verify", "run the invariant suite on supplied inputs");
    for (CLI::App* cmd : {bounds, evolve_cmd, geodesic, verify}) add_common(cmd, args);
    bounds->get_option("--rho0")->required();
    bounds->get_option("--rho1")->required();
    evolve_cmd->get_option("--rho0")->required();
    geodesic->get_option("--rho0")->required();
    geodesic->get_option("--rho1")->required();
    verify->get_option("--rho0")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (bounds->parsed()) return run_bounds(args);
        if (evolve_cmd->parsed()) return run_evolve(args);
        if (geodesic->parsed()) return run_geodesic(args);
        return run_verify(args);
    } catch (const qsl::ValidationError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
