#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <random>

#include "qsl/io.hpp"
#include "test_support.hpp"

using namespace qsl;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("qsl_io_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("matrix file round trip is bit exact") {
    TempDir dir;
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        int dim = 2 + trial % 5;
        io::MatrixFile mf;
        mf.dim = dim;
        mf.kind = "hermitian";
        mf.matrix = qsl::test::random_hermitian(dim, rng);
        std::string path = dir.file("m.json");
        io::write_matrix_file(path, mf);
        io::MatrixFile back = io::read_matrix_file(path);
        CHECK(back.dim == dim);
        CHECK(back.kind == "hermitian");
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c)
                CHECK(back.matrix(r, c) == mf.matrix(r, c));  // exact
    }
}

TEST_CASE("density round trip and kind enforcement") {
    TempDir dir;
    std::mt19937_64 rng(72);
    DensityOperator rho = qsl::test::random_density(3, 2, rng);
    io::MatrixFile mf{3, "density", rho.matrix()};
    io::write_matrix_file(dir.file("rho.json"), mf);
    DensityOperator back = io::load_density(dir.file("rho.json"));
    CHECK((back.matrix() - rho.matrix()).norm() == 0.0);
    CHECK_THROWS_AS(io::load_hermitian(dir.file("rho.json")), ParseError);
}

TEST_CASE("parse errors carry the offending location") {
    TempDir dir;
    io::write_text_file(dir.file("bad.json"), "{\"dim\": 2, \"kind\": \"density\"}");
    CHECK_THROWS_AS(io::read_matrix_file(dir.file("bad.json")), ParseError);
    io::write_text_file(dir.file("bad2.json"),
                        "{\"dim\": 2, \"kind\": \"density\", \"matrix\": [[[0.5,0],[0,0]]]}");
    CHECK_THROWS_WITH_AS(io::read_matrix_file(dir.file("bad2.json")),
                         doctest::Contains("rows"), ParseError);
    io::write_text_file(dir.file("bad3.json"), "not json");
    CHECK_THROWS_AS(io::read_matrix_file(dir.file("bad3.json")), ParseError);
    CHECK_THROWS_AS(io::read_matrix_file(dir.file("missing.json")), ParseError);
}

TEST_CASE("invalid density content fails validation, not parsing") {
    TempDir dir;
    Matrix not_density = 2.0 * Matrix::Identity(2, 2);
    io::write_matrix_file(dir.file("nd.json"), {2, "density", not_density});
    CHECK_THROWS_AS(io::load_density(dir.file("nd.json")), TraceNotOne);
}

TEST_CASE("constant and piecewise schedules") {
    TempDir dir;
    Matrix h0(2, 2), h1(2, 2);
    h0 << 0, 1, 1, 0;
    h1 << 1, 0, 0, -1;
    io::write_matrix_file(dir.file("h0.json"), {2, "hermitian", h0});
    io::write_matrix_file(dir.file("h1.json"), {2, "hermitian", h1});

    io::write_text_file(dir.file("const.json"),
                        "{\"type\": \"constant\", \"hamiltonian\": \"h0.json\"}");
    HamiltonianSchedule c = io::load_schedule(dir.file("const.json"));
    CHECK((c.at(0.0) - h0).norm() == 0.0);
    CHECK((c.at(5.0) - h0).norm() == 0.0);

    io::write_text_file(dir.file("pw.json"),
                        "{\"type\": \"piecewise\", \"knots\": [[0.0, \"h0.json\"], "
                        "[1.0, \"h1.json\"]]}");
    HamiltonianSchedule pw = io::load_schedule(dir.file("pw.json"));
    CHECK((pw.at(0.5) - h0).norm() == 0.0);  // knot value holds until the next knot
    CHECK((pw.at(1.0) - h1).norm() == 0.0);
    CHECK((pw.at(3.0) - h1).norm() == 0.0);

    io::write_text_file(dir.file("bad.json"), "{\"type\": \"spline\"}");
    CHECK_THROWS_AS(io::load_schedule(dir.file("bad.json")), ParseError);
}

TEST_CASE("bound report serialization") {
    DensityOperator rho0 = DensityOperator::validate([] {
        Matrix m = Matrix::Zero(2, 2);
        m(0, 0) = 0.8;
        m(1, 1) = 0.2;
        return m;
    }());
    Matrix sx(2, 2);
    sx << 0, 1, 1, 0;
    DensityOperator rho1 = DensityOperator::validate(
        expm_skew(Complex(0, -1) * sx * 0.7) * rho0.matrix() *
        expm_skew(Complex(0, 1) * sx * 0.7));
    BoundReport report = compare_bounds(rho0, rho1, 1.0);
    std::string json = io::bound_report_json(report);
    CHECK(json.find("\"tau_u\"") != std::string::npos);
    CHECK(json.find("\"tau_wy\"") != std::string::npos);
    CHECK(json.find("\"warnings\"") != std::string::npos);
    std::string csv = io::bound_report_csv(report);
    CHECK(csv.find("tau_p_lower") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);  // header + one row
}

TEST_CASE("trajectory CSV has one row per sample and nan for gated speeds") {
    DensityOperator rho0 = DensityOperator::validate([] {
        Matrix m = Matrix::Zero(2, 2);
        m(0, 0) = 0.8;
        m(1, 1) = 0.2;
        return m;
    }());
    Matrix sx(2, 2);
    sx << 0, 1, 1, 0;
    Trajectory traj = evolve(rho0, HamiltonianSchedule::constant(sx), 0.0, 1.0, 10);
    std::string csv = io::trajectory_csv(traj);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 12);  // header + 11 samples
    CHECK(csv.find("speed_fs-pure") != std::string::npos);
    CHECK(csv.find("nan") != std::string::npos);  // fs-pure gate on a mixed state
    CHECK(csv.find("speed_bures") != std::string::npos);
}
