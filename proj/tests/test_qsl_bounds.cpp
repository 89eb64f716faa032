#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "qsl/qsl_bounds.hpp"
#include "test_support.hpp"

using namespace qsl;
using qsl::test::random_density;
using qsl::test::rotate;

namespace {

constexpr double pi = std::numbers::pi;

DensityOperator diag_state(std::initializer_list<double> p) {
    int dim = static_cast<int>(p.size());
    Matrix m = Matrix::Zero(dim, dim);
    int k = 0;
    for (double v : p) m(k, k) = v, ++k;
    return DensityOperator::validate(m);
}

Matrix sigma_x() {
    Matrix s(2, 2);
    s << 0, 1, 1, 0;
    return s;
}

// Qubit rotated a quarter turn about x: the closed-form benchmark pair.
DensityOperator rotated_qubit(double p, double t) {
    DensityOperator rho0 = diag_state({p, 1 - p});
    Trajectory traj = evolve(rho0, HamiltonianSchedule::constant(sigma_x()), 0.0, t, 400);
    return traj.states.back();
}

} // namespace

TEST_CASE("benchmark qubit pair p = 0.8 at t = pi/4") {
    DensityOperator rho0 = diag_state({0.8, 0.2});
    DensityOperator rho1 = rotated_qubit(0.8, pi / 4);
    const double de = 1.0;  // Delta(sigma_x, rho0)

    CHECK(tau_u(rho0, rho1, de) ==
          doctest::Approx(std::acos(std::sqrt(0.82))).epsilon(1e-8));
    CHECK(tau_u(rho0, rho1, de) == doctest::Approx(0.438149).epsilon(1e-5));

    TauWyResult wy = tau_wy(rho0, rho1, de);
    CHECK(wy.valid);  // width 0.6 <= 3 * 0.2
    CHECK(wy.value == doctest::Approx(std::acos(0.9)).epsilon(1e-8));
    CHECK(wy.value == doctest::Approx(0.451027).epsilon(1e-5));

    CHECK(tau_g(rho0, rho1, de) == doctest::Approx(pi / 4).epsilon(1e-7));
    TauPResult p = tau_p(rho0, rho1, de);
    REQUIRE(p.exact.has_value());
    CHECK(*p.exact == doctest::Approx(pi / 4).epsilon(1e-7));
    CHECK(p.lower == doctest::Approx(pi / 4).epsilon(1e-7));

    // every bound is dominated by the actual transit time pi/4
    CHECK(tau_u(rho0, rho1, de) <= pi / 4 + 1e-9);
    CHECK(wy.value <= pi / 4 + 1e-9);
    CHECK(tau_g(rho0, rho1, de) <= pi / 4 + 1e-7);
}

TEST_CASE("benchmark qubit pair p = 0.97: the affinity bound overshoots") {
    DensityOperator rho0 = diag_state({0.97, 0.03});
    DensityOperator rho1 = rotated_qubit(0.97, pi / 4);
    TauWyResult wy = tau_wy(rho0, rho1, 1.0);
    CHECK_FALSE(wy.valid);  // width 0.94 > 3 * 0.03
    CHECK(wy.reason == "spectral width exceeds three times the smallest eigenvalue");
    CHECK(wy.value == doctest::Approx(std::acos(0.5 + std::sqrt(0.97 * 0.03))).epsilon(1e-7));
    // the invalid value exceeds the actual transit time: not a speed limit here
    CHECK(wy.value > pi / 4);
}

TEST_CASE("tau_mt for pure states matches the Fubini-Study angle") {
    DensityOperator rho0 = diag_state({1.0, 0.0});
    DensityOperator rho1 = rotated_qubit(1.0, pi / 4);
    CHECK(tau_mt(rho0, rho1, 1.0) == doctest::Approx(pi / 4).epsilon(1e-7));
    CHECK_THROWS_AS(tau_mt(diag_state({0.5, 0.5}), rho1, 1.0), NotPure);
}

TEST_CASE("tau_frowis tightens the Uhlmann bound on the benchmark pair") {
    DensityOperator rho0 = diag_state({0.8, 0.2});
    DensityOperator rho1 = rotated_qubit(0.8, pi / 4);
    // sqrt(F(sigma_x, rho_t)) = 1.2 along the whole curve
    double frowis = tau_frowis(rho0, rho1, 1.2);
    CHECK(frowis == doctest::Approx(2.0 * std::acos(std::sqrt(0.82)) / 1.2).epsilon(1e-8));
    CHECK(frowis > tau_u(rho0, rho1, 1.0));
    CHECK(frowis <= pi / 4 + 1e-9);
}

TEST_CASE("tau_p exact cases") {
    SUBCASE("orthogonal pure states") {
        TauPResult p = tau_p(diag_state({1.0, 0.0}), diag_state({0.0, 1.0}), 1.0);
        REQUIRE(p.exact.has_value());
        CHECK(*p.exact == doctest::Approx(pi / 2));
    }
    SUBCASE("commuting involution qutrit") {
        DensityOperator rho0 = diag_state({0.5, 0.3, 0.2});
        DensityOperator rho1 = diag_state({0.2, 0.3, 0.5});
        TauPResult p = tau_p(rho0, rho1, 2.0);
        REQUIRE(p.exact.has_value());
        CHECK(*p.exact == doctest::Approx((pi / 2) * std::sqrt(0.7) / 2.0).epsilon(1e-9));
        CHECK(p.upper == *p.exact);
        CHECK(p.lower <= *p.exact + 1e-9);
    }
    SUBCASE("two distinct eigenvalues, rotated basis") {
        std::mt19937_64 rng(61);
        DensityOperator rho0 = diag_state({0.35, 0.35, 0.3});
        DensityOperator rho1 = rotate(rho0, rng);
        TauPResult p = tau_p(rho0, rho1, 1.0);
        REQUIRE(p.exact.has_value());
        Projector a{rho0.spectrum().projectors[0], 2};
        Projector b{rho1.spectrum().projectors[0], 2};
        CHECK(*p.exact ==
              doctest::Approx(std::sqrt(0.65) * grassmann_distance(a, b)).epsilon(1e-9));
    }
}

TEST_CASE("tau_p interval brackets the shooting result on generic qutrits") {
    std::mt19937_64 rng(62);
    DensityOperator rho0 = diag_state({0.5, 0.3, 0.2});
    DensityOperator rho1 = rotate(rho0, rng);
    GpDistanceOptions opts;
    opts.restarts = 4;
    opts.steps = 150;
    TauPResult p = tau_p(rho0, rho1, 1.0, opts);
    CHECK_FALSE(p.exact.has_value());
    CHECK(p.lower <= p.upper + 1e-9);
    CHECK(p.upper_converged);
}

TEST_CASE("tau_p requires isospectral states and positive uncertainty") {
    CHECK_THROWS_AS(tau_p(diag_state({0.8, 0.2}), diag_state({0.6, 0.4}), 1.0),
                    NotIsospectral);
    CHECK_THROWS_AS(tau_p(diag_state({0.8, 0.2}), diag_state({0.2, 0.8}), 0.0),
                    NonpositiveUncertainty);
}

TEST_CASE("compare_bounds on identical states is all zeros") {
    DensityOperator rho = diag_state({0.6, 0.4});
    BoundReport report = compare_bounds(rho, rho, 1.0);
    CHECK(report.isospectral);
    CHECK(*report.tau_g == doctest::Approx(0.0));
    CHECK(*report.tau_fs == doctest::Approx(0.0));
    CHECK(*report.tau_u == doctest::Approx(0.0));
    CHECK(report.tau_wy.value == doctest::Approx(0.0));
    REQUIRE(report.tau_p.has_value());
    CHECK(report.tau_p->upper == doctest::Approx(0.0));
    CHECK(report.warnings.empty());
}

TEST_CASE("compare_bounds flags non-isospectral pairs") {
    BoundReport report = compare_bounds(diag_state({0.8, 0.2}), diag_state({0.6, 0.4}), 1.0);
    CHECK_FALSE(report.isospectral);
    CHECK_FALSE(report.tau_g.has_value());
    CHECK_FALSE(report.tau_fs.has_value());
    CHECK_FALSE(report.tau_p.has_value());
    CHECK(report.tau_u.has_value());  // still reported, with a warning
    REQUIRE_FALSE(report.warnings.empty());
}

TEST_CASE("compare_bounds ordering on random isospectral pairs") {
    std::mt19937_64 rng(63);
    CompareOptions opts;
    opts.shoot_tau_p = false;
    for (int trial = 0; trial < 50; ++trial) {
        int dim = 2 + trial % 4;
        DensityOperator rho0 = random_density(dim, 1 + trial % dim, rng);
        DensityOperator rho1 = rotate(rho0, rng);
        BoundReport report = compare_bounds(rho0, rho1, 1.0, opts);
        REQUIRE(report.tau_g.has_value());
        CHECK(*report.tau_fs <= *report.tau_g + 1e-9);
        CHECK(*report.tau_u >= 0.0);
        CHECK(report.tau_p->lower == doctest::Approx(*report.tau_g));
    }
}

TEST_CASE("delta_e scaling is linear in every bound") {
    DensityOperator rho0 = diag_state({0.8, 0.2});
    DensityOperator rho1 = rotated_qubit(0.8, pi / 4);
    CHECK(tau_u(rho0, rho1, 2.0) == doctest::Approx(0.5 * tau_u(rho0, rho1, 1.0)));
    CHECK(tau_g(rho0, rho1, 2.0) == doctest::Approx(0.5 * tau_g(rho0, rho1, 1.0)));
    CHECK(tau_fs(rho0, rho1, 2.0) == doctest::Approx(0.5 * tau_fs(rho0, rho1, 1.0)));
}
