#pragma once

// Shannon entropies of distinct, sequential and joint outcome distributions,
// and the variance-form uncertainty relations.

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "hermitian.hpp"
#include "probability.hpp"
#include "state.hpp"

namespace seqent {

inline constexpr double kNaturalBase = std::numbers::e;
inline constexpr double kNegligibleWeight = 1e-15;  // terms below this contribute 0·log 0

namespace detail {

inline double log_base_factor(double log_base) {
    if (!(log_base > 1.0) || !std::isfinite(log_base)) {
        throw InvalidArgument("log base must be a finite number greater than 1");
    }
    return 1.0 / std::log(log_base);
}

// −Σ p log p over raw weights; no validation.
inline double entropy_of_weights(const std::vector<double>& w, double log_base = kNaturalBase) {
    double s = 0.0;
    for (double p : w) {
        if (p > kNegligibleWeight) s -= p * std::log(p);
    }
    return s * log_base_factor(log_base);
}

}  // namespace detail

inline double shannon_entropy(const ProbabilityDistribution& p, double log_base = kNaturalBase) {
    return detail::entropy_of_weights(p.weights(), log_base);
}

inline double joint_entropy(const JointDistribution& joint, double log_base = kNaturalBase) {
    return detail::entropy_of_weights(joint.table(), log_base);
}

/// Entropy of A's outcomes measured directly on ρ.
inline double entropy_distinct(const DensityOperator& rho, const HermitianObservable& a,
                               double log_base = kNaturalBase) {
    return shannon_entropy(outcome_distribution(rho, a), log_base);
}

/// Marginal and joint entropies of a measurement sequence. The pairwise fields
/// are populated for three-step sequences only.
struct EntropyReport {
    double s_a = 0.0;
    double s_b = 0.0;
    std::optional<double> s_c;
    double s_joint = 0.0;
    std::optional<double> s_ab;
    std::optional<double> s_bc;
    double log_base = kNaturalBase;
};

inline EntropyReport entropies_sequential(const DensityOperator& rho, const HermitianObservable& a,
                                          const HermitianObservable& b,
                                          double log_base = kNaturalBase) {
    const JointDistribution joint = wigner_joint_2(rho, a, b);
    EntropyReport r;
    r.log_base = log_base;
    r.s_a = shannon_entropy(joint.marginal(0), log_base);
    r.s_b = shannon_entropy(joint.marginal(1), log_base);
    r.s_joint = joint_entropy(joint, log_base);
    return r;
}

inline EntropyReport entropies_sequential_3(const DensityOperator& rho, const HermitianObservable& a,
                                            const HermitianObservable& b,
                                            const HermitianObservable& c,
                                            double log_base = kNaturalBase) {
    const JointDistribution joint = wigner_joint_3(rho, a, b, c);
    EntropyReport r;
    r.log_base = log_base;
    r.s_a = shannon_entropy(joint.marginal(0), log_base);
    r.s_b = shannon_entropy(joint.marginal(1), log_base);
    r.s_c = shannon_entropy(joint.marginal(2), log_base);
    r.s_ab = joint_entropy(joint.marginal_over({0, 1}), log_base);
    r.s_bc = joint_entropy(joint.marginal_over({1, 2}), log_base);
    r.s_joint = joint_entropy(joint, log_base);
    return r;
}

/// Sum of outcome entropies of a pure state sent through a measurement chain.
/// With a single observable this is the distinct-measurement entropy.
inline double chain_entropy_sum(const ComplexVector& psi, const ObservableChain& chain,
                                double log_base = kNaturalBase) {
    double total = 0.0;
    for (const auto& m : chain_marginals(psi, chain)) total += detail::entropy_of_weights(m, log_base);
    return total;
}

/// Variances for distinct and for successive measurement of A then B.
struct VarianceReport {
    double var_a = 0.0;
    double var_b = 0.0;
    double robertson_rhs = 0.0;
    double successive_var_a = 0.0;
    double successive_var_b = 0.0;
    double successive_rhs = 0.0;
    ComplexMatrix c_of_b;  // Σ_i P^A(a_i) B P^A(a_i)
};

/// Σ_i P^A(a_i) B P^A(a_i)
inline ComplexMatrix pinched_observable(const HermitianObservable& a, const HermitianObservable& b) {
    detail::require_same_dim(a.dim(), b.dim(), "pinched_observable");
    ComplexMatrix out = ComplexMatrix::Zero(a.dim(), a.dim());
    for (const auto& p : a.spectrum().projectors) out += p * b.matrix() * p;
    return out;
}

inline VarianceReport variance_relations(const DensityOperator& rho, const HermitianObservable& a,
                                         const HermitianObservable& b) {
    detail::require_same_dim(rho.dim(), a.dim(), "variance_relations");
    detail::require_same_dim(rho.dim(), b.dim(), "variance_relations");
    VarianceReport r;
    const ComplexMatrix& am = a.matrix();
    const ComplexMatrix& bm = b.matrix();
    const double mean_a = rho.expectation(am).real();
    const double mean_b = rho.expectation(bm).real();
    r.var_a = std::max(0.0, rho.expectation(am * am).real() - mean_a * mean_a);
    r.var_b = std::max(0.0, rho.expectation(bm * bm).real() - mean_b * mean_b);
    r.robertson_rhs = 0.25 * std::norm(rho.expectation(commutator(am, bm)));

    // Moments of the sequential joint distribution.
    const JointDistribution joint = wigner_joint_2(rho, a, b);
    const auto& av = joint.axes()[0];
    const auto& bv = joint.axes()[1];
    double ea = 0, eb = 0, eaa = 0, ebb = 0, eab = 0;
    for (std::size_t i = 0; i < av.size(); ++i) {
        for (std::size_t j = 0; j < bv.size(); ++j) {
            const double p = joint(i, j);
            ea += p * av[i];
            eb += p * bv[j];
            eaa += p * av[i] * av[i];
            ebb += p * bv[j] * bv[j];
            eab += p * av[i] * bv[j];
        }
    }
    r.successive_var_a = std::max(0.0, eaa - ea * ea);
    r.successive_var_b = std::max(0.0, ebb - eb * eb);

    r.c_of_b = pinched_observable(a, b);
    const Complex cov = rho.expectation(am * r.c_of_b) -
                        rho.expectation(am) * rho.expectation(r.c_of_b);
    r.successive_rhs = std::norm(cov);
    return r;
}

}  // namespace seqent
