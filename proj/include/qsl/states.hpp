#ifndef QSL_STATES_HPP
#define QSL_STATES_HPP

#include "qsl/operator_core.hpp"

namespace qsl {

/// Validated density operator with cached spectral decomposition. The
/// decomposition includes the zero eigenspace (if any) as its last entry;
/// rank counts the eigenvalues above 1e-12 times the largest one.
class DensityOperator {
public:
    static DensityOperator validate(const Matrix& m, double tol = 1e-10);

    const Matrix& matrix() const { return matrix_; }
    const SpectralDecomposition& spectrum() const { return spectrum_; }
    int dim() const { return static_cast<int>(matrix_.rows()); }
    int rank() const { return rank_; }
    bool is_pure() const { return rank_ == 1; }
    bool is_faithful() const { return rank_ == dim(); }

    /// Number of distinct nonzero eigenvalues (the spec's m-bar).
    int nonzero_cluster_count() const;

    Matrix support_projector() const;
    Matrix sqrt() const;

private:
    DensityOperator() = default;
    Matrix matrix_;
    SpectralDecomposition spectrum_;
    int rank_ = 0;
};

struct ObservableSplit {
    Matrix horizontal;
    Matrix vertical;
};

/// Vertical part sums P_j A P_j over every eigenprojector of rho, including
/// the kernel; horizontal is the remainder and satisfies [A, rho] = [A^h, rho].
ObservableSplit split_observable(const Matrix& a, const DensityOperator& rho);

double expectation(const Matrix& a, const DensityOperator& rho);
double variance(const Matrix& a, const DensityOperator& rho);

/// tr(A^2 rho) - tr(A sqrt(rho) A sqrt(rho))
double skew_information(const Matrix& a, const DensityOperator& rho);

/// tr(A^2 P) - tr(A P A P) for an idempotent Hermitian P.
double skew_information_projector(const Matrix& a, const Matrix& p);

/// J(A, rho) = sum_j p_j I(A, P_j) over the nonzero eigenvalue clusters.
double j_functional(const Matrix& a, const DensityOperator& rho);

/// 2 sum_{j,k} (p_j - p_k)^2 / (p_j + p_k) tr(A P_j A P_k), pairs with
/// p_j = p_k skipped.
double quantum_fisher_information(const Matrix& a, const DensityOperator& rho);

} // namespace qsl

#endif
