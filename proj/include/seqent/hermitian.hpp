#pragma once

// Dense complex matrix substrate: Hermitian eigendecomposition, spectral
// projectors built by clustering nearly equal eigenvalues, operator norm.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace seqent {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr long kMinDim = 2;
inline constexpr long kMaxDim = 16;

inline constexpr double kHermiticityTolerance = 1e-8;

struct Eigensystem {
    Eigen::VectorXd values;  // ascending
    ComplexMatrix vectors;   // column k belongs to values[k]
};

namespace detail {

inline double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline void require_square_finite(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw InvalidArgument(std::string(what) + ": matrix must be square and non-empty");
    }
    if (!m.allFinite()) {
        throw InvalidArgument(std::string(what) + ": matrix has non-finite entries");
    }
}

inline void require_dim_in_range(long dim, const char* what) {
    if (dim < kMinDim || dim > kMaxDim) {
        throw InvalidArgument(std::string(what) + ": dimension " + std::to_string(dim) +
                              " outside supported range [2, 16]");
    }
}

}  // namespace detail

/// Hermiticity defect ‖H − H†‖_max relative to max(1, ‖H‖_max).
inline double hermiticity_defect(const ComplexMatrix& h) {
    const double scale = std::max(1.0, detail::max_abs(h));
    return detail::max_abs(h - h.adjoint()) / scale;
}

inline bool is_hermitian(const ComplexMatrix& h, double tol = kHermiticityTolerance) {
    return h.rows() == h.cols() && hermiticity_defect(h) <= tol;
}

/// Eigenvalues in ascending order with an orthonormal eigenbasis.
inline Eigensystem eigh(const ComplexMatrix& h) {
    detail::require_square_finite(h, "eigh");
    if (!is_hermitian(h)) {
        throw NotHermitian("eigh: matrix is not Hermitian (defect " +
                           std::to_string(hermiticity_defect(h)) + ")");
    }
    const ComplexMatrix sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceFailure("eigh: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

/// Largest singular value.
inline double operator_norm(const ComplexMatrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    if (!m.allFinite()) {
        throw InvalidArgument("operator_norm: matrix has non-finite entries");
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

/// Resolution H = Σ_i a_i P_i into distinct eigenvalues and orthogonal projectors.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;         // strictly increasing
    std::vector<ComplexMatrix> projectors;   // P_i = V_i V_i†
    std::vector<int> multiplicities;         // rank(P_i)
    std::vector<ComplexMatrix> eigenvectors; // V_i, orthonormal columns spanning range(P_i)

    std::size_t size() const { return eigenvalues.size(); }
};

/// Default clustering threshold: 1e-8 times the spectral width, floored at 1e-8.
inline double default_cluster_tolerance(const Eigen::VectorXd& ascending_values) {
    const double width = ascending_values.size() == 0
                             ? 0.0
                             : ascending_values(ascending_values.size() - 1) - ascending_values(0);
    return 1e-8 * std::max(width, 1.0);
}

inline SpectralDecomposition spectral_resolution(const Eigensystem& es, double cluster_tol) {
    if (!(cluster_tol >= 0.0)) {
        throw InvalidArgument("spectral_resolution: cluster tolerance must be non-negative");
    }
    const long n = es.values.size();
    SpectralDecomposition out;
    long start = 0;
    while (start < n) {
        long stop = start + 1;
        while (stop < n && es.values(stop) - es.values(stop - 1) <= cluster_tol) {
            ++stop;
        }
        const long mult = stop - start;
        const ComplexMatrix basis = es.vectors.middleCols(start, mult);
        out.eigenvalues.push_back(es.values.segment(start, mult).mean());
        out.projectors.push_back(basis * basis.adjoint());
        out.multiplicities.push_back(static_cast<int>(mult));
        out.eigenvectors.push_back(basis);
        start = stop;
    }
    return out;
}

inline SpectralDecomposition spectral_resolution(const ComplexMatrix& h,
                                                 std::optional<double> cluster_tol = {}) {
    const Eigensystem es = eigh(h);
    return spectral_resolution(es, cluster_tol.value_or(default_cluster_tolerance(es.values)));
}

/// A Hermitian matrix together with its spectral resolution.
class HermitianObservable {
public:
    explicit HermitianObservable(const ComplexMatrix& m, std::optional<double> cluster_tol = {}) {
        detail::require_square_finite(m, "HermitianObservable");
        detail::require_dim_in_range(m.rows(), "HermitianObservable");
        if (!is_hermitian(m)) {
            throw NotHermitian("HermitianObservable: matrix is not Hermitian (defect " +
                               std::to_string(hermiticity_defect(m)) + ")");
        }
        matrix_ = 0.5 * (m + m.adjoint());
        spectrum_ = spectral_resolution(matrix_, cluster_tol);
    }

    const ComplexMatrix& matrix() const { return matrix_; }
    const SpectralDecomposition& spectrum() const { return spectrum_; }
    long dim() const { return matrix_.rows(); }
    std::size_t outcome_count() const { return spectrum_.size(); }
    double eigenvalue(std::size_t i) const { return spectrum_.eigenvalues.at(i); }
    const ComplexMatrix& projector(std::size_t i) const { return spectrum_.projectors.at(i); }
    const std::vector<double>& eigenvalues() const { return spectrum_.eigenvalues; }

    bool nondegenerate() const { return static_cast<long>(spectrum_.size()) == dim(); }

    /// Unit eigenvector for outcome i; requires a rank-one projector.
    ComplexVector eigenvector(std::size_t i) const {
        const ComplexMatrix& v = spectrum_.eigenvectors.at(i);
        if (v.cols() != 1) {
            throw DegenerateSpectrum("eigenvector: eigenvalue " + std::to_string(eigenvalue(i)) +
                                     " has multiplicity " + std::to_string(v.cols()));
        }
        return v.col(0);
    }

private:
    ComplexMatrix matrix_;
    SpectralDecomposition spectrum_;
};

inline void require_nondegenerate(const HermitianObservable& a, const char* what) {
    if (!a.nondegenerate()) {
        throw DegenerateSpectrum(std::string(what) + ": observable has a degenerate spectrum");
    }
}

/// Table of squared eigenvector overlaps |⟨a_i|b_j⟩|² for nondegenerate observables.
inline Eigen::MatrixXd squared_overlaps(const HermitianObservable& a, const HermitianObservable& b) {
    detail::require_same_dim(a.dim(), b.dim(), "squared_overlaps");
    require_nondegenerate(a, "squared_overlaps");
    require_nondegenerate(b, "squared_overlaps");
    const ComplexMatrix va = [&] {
        ComplexMatrix m(a.dim(), a.dim());
        for (std::size_t i = 0; i < a.outcome_count(); ++i) m.col(i) = a.eigenvector(i);
        return m;
    }();
    const ComplexMatrix vb = [&] {
        ComplexMatrix m(b.dim(), b.dim());
        for (std::size_t j = 0; j < b.outcome_count(); ++j) m.col(j) = b.eigenvector(j);
        return m;
    }();
    return (va.adjoint() * vb).cwiseAbs2();
}

inline ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) {
    return x * y - y * x;
}

}  // namespace seqent
