#include "qsl/states.hpp"

#include <cmath>

namespace qsl {

namespace {

double clamp_tiny_negative(double x, double tol = 1e-12) {
    return (x < 0.0 && x > -tol) ? 0.0 : x;
}

void check_dims(const Matrix& a, const DensityOperator& rho) {
    if (a.rows() != rho.dim() || a.cols() != rho.dim())
        throw DimensionMismatch("observable and state dimensions differ");
}

} // namespace

DensityOperator DensityOperator::validate(const Matrix& m, double tol) {
    Matrix h;
    try {
        h = hermitize(m, tol);
    } catch (const NotHermitian&) {
        throw NotHermitian("density matrix is not Hermitian");
    }
    double tr = h.trace().real();
    if (std::abs(tr - 1.0) > std::max(tol, 1e-10))
        throw TraceNotOne("density matrix trace differs from 1");

    DensityOperator rho;
    rho.spectrum_ = spectral_decompose(h);
    double top = rho.spectrum_.eigenvalues.front();
    if (rho.spectrum_.eigenvalues.back() < -std::max(tol, 1e-10))
        throw NotPSD("density matrix has a negative eigenvalue");
    double zero_threshold = 1e-12 * std::max(top, 1.0e-300);
    rho.rank_ = 0;
    for (std::size_t j = 0; j < rho.spectrum_.size(); ++j)
        if (rho.spectrum_.eigenvalues[j] > zero_threshold)
            rho.rank_ += rho.spectrum_.multiplicities[j];
    rho.matrix_ = h;
    return rho;
}

int DensityOperator::nonzero_cluster_count() const {
    double zero_threshold = 1e-12 * spectrum_.eigenvalues.front();
    int count = 0;
    for (double p : spectrum_.eigenvalues)
        if (p > zero_threshold) ++count;
    return count;
}

Matrix DensityOperator::support_projector() const {
    Matrix p = Matrix::Zero(dim(), dim());
    int nz = nonzero_cluster_count();
    for (int j = 0; j < nz; ++j)
        p += spectrum_.projectors[j];
    return p;
}

Matrix DensityOperator::sqrt() const {
    Matrix s = Matrix::Zero(dim(), dim());
    for (std::size_t j = 0; j < spectrum_.size(); ++j)
        s += std::sqrt(std::max(0.0, spectrum_.eigenvalues[j])) * spectrum_.projectors[j];
    return s;
}

ObservableSplit split_observable(const Matrix& a, const DensityOperator& rho) {
    check_dims(a, rho);
    Matrix vertical = Matrix::Zero(rho.dim(), rho.dim());
    for (const Matrix& p : rho.spectrum().projectors)
        vertical += p * a * p;
    return {a - vertical, vertical};
}

double expectation(const Matrix& a, const DensityOperator& rho) {
    check_dims(a, rho);
    return (a * rho.matrix()).trace().real();
}

double variance(const Matrix& a, const DensityOperator& rho) {
    check_dims(a, rho);
    double mean = (a * rho.matrix()).trace().real();
    double second = (a * a * rho.matrix()).trace().real();
    return clamp_tiny_negative(second - mean * mean);
}

double skew_information(const Matrix& a, const DensityOperator& rho) {
    check_dims(a, rho);
    Matrix s = rho.sqrt();
    double val = (a * a * rho.matrix()).trace().real() - (a * s * a * s).trace().real();
    return clamp_tiny_negative(val);
}

double skew_information_projector(const Matrix& a, const Matrix& p) {
    if (a.rows() != p.rows() || a.cols() != p.cols())
        throw DimensionMismatch("observable and projector dimensions differ");
    double val = (a * a * p).trace().real() - (a * p * a * p).trace().real();
    return clamp_tiny_negative(val);
}

double j_functional(const Matrix& a, const DensityOperator& rho) {
    check_dims(a, rho);
    const SpectralDecomposition& sd = rho.spectrum();
    double zero_threshold = 1e-12 * sd.eigenvalues.front();
    double sum = 0.0;
    for (std::size_t j = 0; j < sd.size(); ++j) {
        if (sd.eigenvalues[j] <= zero_threshold) continue;
        sum += sd.eigenvalues[j] * skew_information_projector(a, sd.projectors[j]);
    }
    return clamp_tiny_negative(sum);
}

double quantum_fisher_information(const Matrix& a, const DensityOperator& rho) {
    check_dims(a, rho);
    const SpectralDecomposition& sd = rho.spectrum();
    double sum = 0.0;
    for (std::size_t j = 0; j < sd.size(); ++j) {
        for (std::size_t k = 0; k < sd.size(); ++k) {
            double pj = std::max(0.0, sd.eigenvalues[j]);
            double pk = std::max(0.0, sd.eigenvalues[k]);
            if (j == k || pj + pk <= 0.0 || pj == pk) continue;
            double weight = (pj - pk) * (pj - pk) / (pj + pk);
            sum += weight * (a * sd.projectors[j] * a * sd.projectors[k]).trace().real();
        }
    }
    return clamp_tiny_negative(2.0 * sum);
}

} // namespace qsl
