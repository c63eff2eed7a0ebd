#pragma once

// Closed-form entropic uncertainty bounds.
//
// Distinct measurements (A and B on separate ensembles): the overlap bounds
// of Deutsch and Maassen–Uffink for nondegenerate spectra, and their
// projector generalizations by Partovi and Krishna–Parthasarathy.
// Successive measurements (A then B on one ensemble): the optimal bound is
// attained on eigenstates of A, which reduces it to a minimum over A's
// eigenspaces of the entropy of B.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "entropy.hpp"
#include "errors.hpp"
#include "hermitian.hpp"
#include "optimizer.hpp"
#include "state.hpp"

namespace seqent {

namespace detail {

inline double scaled_log(double x, double log_base) { return std::log(x) * log_base_factor(log_base); }

inline void require_pair(const HermitianObservable& a, const HermitianObservable& b, const char* what) {
    require_same_dim(a.dim(), b.dim(), what);
}

}  // namespace detail

/// 2 log[2 / (1 + max |⟨a_i|b_j⟩|)]
inline double deutsch_bound(const HermitianObservable& a, const HermitianObservable& b,
                            double log_base = kNaturalBase) {
    detail::require_pair(a, b, "deutsch_bound");
    const double c = std::sqrt(squared_overlaps(a, b).maxCoeff());
    return std::max(0.0, 2.0 * detail::scaled_log(2.0 / (1.0 + std::min(c, 1.0)), log_base));
}

/// 2 log[2 / max ‖P^A(a_i) + P^B(b_j)‖]
inline double partovi_bound(const HermitianObservable& a, const HermitianObservable& b,
                            double log_base = kNaturalBase) {
    detail::require_pair(a, b, "partovi_bound");
    double worst = 0.0;
    for (const auto& p : a.spectrum().projectors) {
        for (const auto& q : b.spectrum().projectors) worst = std::max(worst, operator_norm(p + q));
    }
    return std::max(0.0, 2.0 * detail::scaled_log(2.0 / std::min(worst, 2.0), log_base));
}

/// log[1 / max |⟨a_i|b_j⟩|²]
inline double maassen_uffink_bound(const HermitianObservable& a, const HermitianObservable& b,
                                   double log_base = kNaturalBase) {
    detail::require_pair(a, b, "maassen_uffink_bound");
    const double c2 = squared_overlaps(a, b).maxCoeff();
    return std::max(0.0, -detail::scaled_log(std::min(c2, 1.0), log_base));
}

/// log[1 / max ‖P^A(a_i) P^B(b_j)‖²]
inline double krishna_parthasarathy_bound(const HermitianObservable& a, const HermitianObservable& b,
                                          double log_base = kNaturalBase) {
    detail::require_pair(a, b, "krishna_parthasarathy_bound");
    double worst = 0.0;
    for (const auto& p : a.spectrum().projectors) {
        for (const auto& q : b.spectrum().projectors) {
            const double n = operator_norm(p * q);
            worst = std::max(worst, n * n);
        }
    }
    return std::max(0.0, -detail::scaled_log(std::min(worst, 1.0), log_base));
}

/// Per-eigenspace infimum of S_{A,B}(B); the optimal successive bound is its minimum.
struct SuccessiveBoundDetail {
    std::vector<double> per_eigenspace;
    std::size_t argmin = 0;
    double value = 0.0;
};

/// Starts per eigenspace dimension used when an eigenspace of A is degenerate.
inline constexpr int kStartsPerSubspaceDim = 8;

inline SuccessiveBoundDetail lambda_s_two_detail(const HermitianObservable& a, const HermitianObservable& b,
                                                 double log_base = kNaturalBase,
                                                 const OptimizerConfig& degenerate_cfg = {}) {
    detail::require_pair(a, b, "lambda_s_two");
    SuccessiveBoundDetail out;
    const ObservableChain only_b{&b};
    for (std::size_t i = 0; i < a.outcome_count(); ++i) {
        const ComplexMatrix& basis = a.spectrum().eigenvectors[i];
        double v;
        if (basis.cols() == 1) {
            std::vector<double> q;
            for (const auto& proj : b.spectrum().projectors) {
                q.push_back((basis.col(0).adjoint() * proj * basis.col(0))(0, 0).real());
            }
            v = detail::entropy_of_weights(q, log_base);
        } else {
            // an eigenstate of A is left unchanged by the A-measurement, so S_{A,B}(B) = S^ψ(B)
            OptimizerConfig cfg = degenerate_cfg;
            cfg.starts = kStartsPerSubspaceDim * static_cast<int>(basis.cols());
            v = minimize_in_subspace(
                    [&](const ComplexVector& psi) { return chain_entropy_sum(psi, only_b, log_base); },
                    basis, cfg)
                    .value;
        }
        out.per_eigenspace.push_back(v);
    }
    const auto it = std::min_element(out.per_eigenspace.begin(), out.per_eigenspace.end());
    out.argmin = static_cast<std::size_t>(it - out.per_eigenspace.begin());
    out.value = *it;
    return out;
}

/// Optimal lower bound on S_{A,B}(A) + S_{A,B}(B) when A is measured before B.
inline double lambda_s_two(const HermitianObservable& a, const HermitianObservable& b,
                           double log_base = kNaturalBase, const OptimizerConfig& degenerate_cfg = {}) {
    return lambda_s_two_detail(a, b, log_base, degenerate_cfg).value;
}

/// |⟨b_j|c_k⟩|²; doubly stochastic.
inline Eigen::MatrixXd transition_matrix(const HermitianObservable& b, const HermitianObservable& c) {
    return squared_overlaps(b, c);
}

/// Three-step successive bound for nondegenerate A, B, C.
///
/// For initial eigenstate |a_i⟩, first_stage[i] is the entropy of B's outcomes
/// and second_stage[i] the entropy of C's outcomes after the A and B collapses.
/// as_printed takes the two infima separately; joint takes the infimum of the
/// sum over a common index, which is the value actually attained by a state.
struct ThreeStageBound {
    double as_printed = 0.0;
    double joint = 0.0;
    double first_stage_bound = 0.0;   // min_i first_stage[i], also the bound on S(B)
    double second_stage_bound = 0.0;  // min_i second_stage[i], the bound on S(C)
    std::vector<double> first_stage;
    std::vector<double> second_stage;
    Eigen::MatrixXd transition;       // U_jk = |⟨b_j|c_k⟩|²
};

inline ThreeStageBound lambda_s_three(const HermitianObservable& a, const HermitianObservable& b,
                                      const HermitianObservable& c, double log_base = kNaturalBase) {
    detail::require_pair(a, b, "lambda_s_three");
    detail::require_pair(a, c, "lambda_s_three");
    require_nondegenerate(a, "lambda_s_three");
    require_nondegenerate(b, "lambda_s_three");
    require_nondegenerate(c, "lambda_s_three");

    ThreeStageBound r;
    const Eigen::MatrixXd ab = squared_overlaps(a, b);
    r.transition = transition_matrix(b, c);
    const Eigen::MatrixXd ac = ab * r.transition;  // Σ_j |⟨a_i|b_j⟩|² |⟨b_j|c_k⟩|²
    r.joint = std::numeric_limits<double>::infinity();
    for (long i = 0; i < ab.rows(); ++i) {
        const Eigen::VectorXd row_b = ab.row(i).transpose();
        const Eigen::VectorXd row_c = ac.row(i).transpose();
        const double t1 = detail::entropy_of_weights(std::vector<double>(row_b.begin(), row_b.end()), log_base);
        const double t2 = detail::entropy_of_weights(std::vector<double>(row_c.begin(), row_c.end()), log_base);
        r.first_stage.push_back(t1);
        r.second_stage.push_back(t2);
        r.joint = std::min(r.joint, t1 + t2);
    }
    r.first_stage_bound = *std::min_element(r.first_stage.begin(), r.first_stage.end());
    r.second_stage_bound = *std::min_element(r.second_stage.begin(), r.second_stage.end());
    r.as_printed = r.first_stage_bound + r.second_stage_bound;
    return r;
}

/// True when the bound on S(C) after A, B is at least the bound on S(B) after A.
inline bool second_stage_dominates(const HermitianObservable& a, const HermitianObservable& b,
                                   const HermitianObservable& c, double slack = 1e-9) {
    const ThreeStageBound r = lambda_s_three(a, b, c);
    return r.second_stage_bound >= r.first_stage_bound - slack;
}

/// All squared overlaps within tol of 1/n.
inline bool is_complementary(const HermitianObservable& a, const HermitianObservable& b,
                             double tol = 1e-9) {
    const Eigen::MatrixXd ov = squared_overlaps(a, b);
    const double target = 1.0 / static_cast<double>(a.dim());
    return ((ov.array() - target).abs() <= tol).all();
}

/// Bounds for one ordered pair. The overlap bounds are absent when either
/// spectrum is degenerate.
struct BoundReport {
    std::optional<double> deutsch;
    double partovi = 0.0;
    std::optional<double> maassen_uffink;
    double krishna_parthasarathy = 0.0;
    double lambda_s = 0.0;
    double log_base = kNaturalBase;
};

inline BoundReport bound_report(const HermitianObservable& a, const HermitianObservable& b,
                                double log_base = kNaturalBase,
                                const OptimizerConfig& degenerate_cfg = {}) {
    BoundReport r;
    r.log_base = log_base;
    if (a.nondegenerate() && b.nondegenerate()) {
        r.deutsch = deutsch_bound(a, b, log_base);
        r.maassen_uffink = maassen_uffink_bound(a, b, log_base);
    }
    r.partovi = partovi_bound(a, b, log_base);
    r.krishna_parthasarathy = krishna_parthasarathy_bound(a, b, log_base);
    r.lambda_s = lambda_s_two(a, b, log_base, degenerate_cfg);
    return r;
}

}  // namespace seqent
