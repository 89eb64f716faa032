#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "test_support.hpp"

using namespace qsl;
using qsl::test::random_hermitian;

TEST_CASE("spectral decomposition reconstructs and orders eigenvalues") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix a = random_hermitian(5, rng);
        SpectralDecomposition sd = spectral_decompose(a);
        CHECK((sd.reconstruct() - a).norm() < 1e-10);
        Matrix sum = Matrix::Zero(5, 5);
        int mult_total = 0;
        for (std::size_t j = 0; j < sd.size(); ++j) {
            if (j > 0) CHECK(sd.eigenvalues[j - 1] > sd.eigenvalues[j]);
            CHECK((sd.projectors[j] * sd.projectors[j] - sd.projectors[j]).norm() < 1e-9);
            sum += sd.projectors[j];
            mult_total += sd.multiplicities[j];
        }
        CHECK((sum - Matrix::Identity(5, 5)).norm() < 1e-9);
        CHECK(mult_total == 5);
    }
}

TEST_CASE("degenerate spectra are clustered into one projector") {
    Matrix a = Matrix::Zero(3, 3);
    a(0, 0) = 2.0;
    a(1, 1) = 2.0 + 1e-12;
    a(2, 2) = 1.0;
    SpectralDecomposition sd = spectral_decompose(a);
    REQUIRE(sd.size() == 2);
    CHECK(sd.multiplicities[0] == 2);
    CHECK(sd.eigenvalues[0] == doctest::Approx(2.0));
}

TEST_CASE("operator_function square root squares back") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix a = random_hermitian(4, rng);
        Matrix psd = a * a.adjoint();
        Matrix root = sqrtm_psd(psd);
        CHECK((root * root - psd).norm() < 1e-9);
    }
}

TEST_CASE("operator_function rejects indefinite input") {
    Matrix a = Matrix::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = -1.0;
    CHECK_THROWS_AS(sqrtm_psd(a), NotPSD);
}

TEST_CASE("polar absolute value matches singular values") {
    std::mt19937_64 rng(3);
    Matrix a(3, 3);
    std::normal_distribution<double> gauss;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            a(r, c) = Complex(gauss(rng), gauss(rng));
    Matrix abs_a = polar_absolute(a);
    Eigen::JacobiSVD<Matrix> svd(a);
    Eigen::SelfAdjointEigenSolver<Matrix> es(abs_a);
    for (int k = 0; k < 3; ++k)
        CHECK(es.eigenvalues()(2 - k) == doctest::Approx(svd.singularValues()(k)).epsilon(1e-9));
    CHECK(std::abs(abs_a.trace().real() - svd.singularValues().sum()) < 1e-9);
}

TEST_CASE("expm_skew is unitary and matches the scalar exponential") {
    Matrix g = Matrix::Zero(2, 2);
    g(0, 1) = 1.0;
    g(1, 0) = -1.0;  // rotation generator
    Matrix u = expm_skew(g);
    CHECK((u * u.adjoint() - Matrix::Identity(2, 2)).norm() < 1e-12);
    CHECK(u(0, 0).real() == doctest::Approx(std::cos(1.0)));
    CHECK(u(0, 1).real() == doctest::Approx(std::sin(1.0)));
}

TEST_CASE("time-ordered exponential: constant generator reduces to expm") {
    std::mt19937_64 rng(4);
    Matrix h = random_hermitian(3, rng);
    auto gen = [&h](double) { return Matrix(Complex(0, -1) * h); };
    Matrix u = time_ordered_exponential(gen, 0.0, 0.7, 50);
    CHECK((u - expm_skew(Complex(0, -0.7) * h)).norm() < 1e-10);
}

TEST_CASE("time-ordered exponential self-converges at second order") {
    std::mt19937_64 rng(5);
    Matrix h0 = random_hermitian(3, rng);
    Matrix h1 = random_hermitian(3, rng);
    auto gen = [&](double t) {
        return Matrix(Complex(0, -1) * (std::cos(t) * h0 + std::sin(2 * t) * h1));
    };
    Matrix ref = time_ordered_exponential(gen, 0.0, 1.0, 4096);
    double err_coarse = (time_ordered_exponential(gen, 0.0, 1.0, 64) - ref).norm();
    double err_fine = (time_ordered_exponential(gen, 0.0, 1.0, 128) - ref).norm();
    CHECK(err_coarse / err_fine > 3.5);  // ~4 for a second-order rule
}

TEST_CASE("hermitize symmetrizes and rejects grossly non-Hermitian input") {
    Matrix a(2, 2);
    a << Complex(1, 0), Complex(2, 1e-12), Complex(2, -3e-12), Complex(4, 0);
    Matrix h = hermitize(a);
    CHECK((h - h.adjoint()).norm() == 0.0);
    Matrix bad(2, 2);
    bad << Complex(1, 0), Complex(0, 1), Complex(0, 1), Complex(1, 0);
    CHECK_THROWS_AS(hermitize(bad), NotHermitian);
}
