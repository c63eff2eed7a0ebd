#pragma once

// Multi-start derivative-free minimization over pure states.
//
// A state in a k-dimensional subspace with orthonormal basis V is written
// ψ = V c / ‖c‖ with c_0 = x_0 real and c_j = x_{2j-1} + i x_{2j}, so the
// search runs over 2k−1 unconstrained reals with the global phase fixed.
// Each start runs a Hooke–Jeeves pattern search whose step halves on every
// failed exploration; the start converges once the step drops below
// step_tolerance. Entropy objectives have unbounded gradients at vanishing
// probabilities, which is why no derivatives are used.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "entropy.hpp"
#include "errors.hpp"
#include "hermitian.hpp"
#include "state.hpp"

namespace seqent {

struct OptimizerConfig {
    int starts = 64;
    int max_iterations = 2000;
    double value_tolerance = 1e-8;
    double step_tolerance = 1e-10;
    std::uint64_t seed = 0;
    unsigned threads = 1;  // starts are independent; results do not depend on this

    void validate() const {
        if (starts < 1 || max_iterations < 1 || !(value_tolerance > 0.0) ||
            !(step_tolerance > 0.0) || threads < 1) {
            throw InvalidArgument("OptimizerConfig: all settings must be positive");
        }
    }
};

struct OptimizerResult {
    double value = 0.0;
    PureState minimizer = PureState::basis(1, 0);
    int starts_converged = 0;
    std::vector<double> per_start_values;
    int best_start = 0;
};

/// Objective over unit vectors of the ambient space. Must be a pure function.
using StateObjective = std::function<double(const ComplexVector&)>;

namespace detail {

inline constexpr double kInitialStep = 0.25;
// Decreases smaller than this (relative) are roundoff; accepting them can stall
// the step on flat valleys.
inline constexpr double kMinImprovement = 1e-15;

inline bool improves(double candidate, double current) {
    return candidate < current - kMinImprovement * (1.0 + std::abs(current));
}

struct StartOutcome {
    double value = std::numeric_limits<double>::infinity();
    ComplexVector state;
    bool converged = false;
};

class SubspaceSearch {
public:
    SubspaceSearch(const StateObjective& objective, const ComplexMatrix& basis,
                   const OptimizerConfig& cfg)
        : objective_(objective), basis_(basis), cfg_(cfg), k_(basis.cols()), n_params_(2 * k_ - 1) {}

    StartOutcome run(std::uint64_t start_seed) const {
        std::mt19937_64 rng(start_seed);
        ComplexVector c = complex_normal_vector(k_, rng);
        if (std::abs(c(0)) > 0.0) c *= std::conj(c(0)) / std::abs(c(0));  // c_0 real
        Eigen::VectorXd x(n_params_);
        x(0) = c(0).real();
        for (long j = 1; j < k_; ++j) {
            x(2 * j - 1) = c(j).real();
            x(2 * j) = c(j).imag();
        }
        x.normalize();

        double fx = eval(x);
        double step = kInitialStep;
        bool converged = false;
        for (int iter = 0; iter < cfg_.max_iterations; ++iter) {
            Eigen::VectorXd trial = x;
            double ft = explore(trial, fx, step);
            if (improves(ft, fx)) {
                // pattern moves along the successful direction
                while (true) {
                    Eigen::VectorXd pattern = trial + (trial - x);
                    x = trial;
                    fx = ft;
                    double fp = eval(pattern);
                    fp = explore(pattern, fp, step);
                    if (!improves(fp, fx) || ++iter >= cfg_.max_iterations) break;
                    trial = pattern;
                    ft = fp;
                }
                x.normalize();
            } else {
                step *= 0.5;
                if (step < cfg_.step_tolerance) {
                    converged = true;
                    break;
                }
            }
        }
        return {fx, to_state(x), converged};
    }

    ComplexVector to_state(const Eigen::VectorXd& x) const {
        ComplexVector c(k_);
        c(0) = Complex(x(0), 0.0);
        for (long j = 1; j < k_; ++j) c(j) = Complex(x(2 * j - 1), x(2 * j));
        ComplexVector psi = basis_ * c;
        return psi / psi.norm();
    }

private:
    double eval(const Eigen::VectorXd& x) const {
        if (!(x.norm() > 1e-300)) return std::numeric_limits<double>::infinity();
        const double v = objective_(to_state(x));
        if (!std::isfinite(v)) {
            throw OptimizerFailure("objective returned a non-finite value");
        }
        return v;
    }

    // Coordinate exploration around x; updates x in place, returns its value.
    double explore(Eigen::VectorXd& x, double fx, double step) const {
        for (long i = 0; i < n_params_; ++i) {
            const double orig = x(i);
            x(i) = orig + step;
            double f = eval(x);
            if (improves(f, fx)) {
                fx = f;
                continue;
            }
            x(i) = orig - step;
            f = eval(x);
            if (improves(f, fx)) {
                fx = f;
                continue;
            }
            x(i) = orig;
        }
        return fx;
    }

    const StateObjective& objective_;
    const ComplexMatrix& basis_;
    const OptimizerConfig& cfg_;
    long k_;
    long n_params_;
};

inline void require_orthonormal(const ComplexMatrix& basis) {
    if (basis.cols() == 0 || basis.rows() == 0) {
        throw InvalidArgument("minimize_in_subspace: empty basis");
    }
    if (basis.cols() > basis.rows()) {
        throw InvalidArgument("minimize_in_subspace: more basis vectors than dimensions");
    }
    const ComplexMatrix gram = basis.adjoint() * basis;
    const double defect =
        (gram - ComplexMatrix::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff();
    if (defect > 1e-10) {
        throw InvalidArgument("minimize_in_subspace: basis is not orthonormal");
    }
}

}  // namespace detail

/// Minimizes the objective over unit vectors in the span of the basis columns.
inline OptimizerResult minimize_in_subspace(const StateObjective& objective, const ComplexMatrix& basis,
                                            const OptimizerConfig& cfg) {
    cfg.validate();
    detail::require_orthonormal(basis);
    if (basis.rows() > kMaxDim) {
        throw InvalidArgument("minimize_in_subspace: dimension exceeds 16");
    }

    const std::size_t starts = static_cast<std::size_t>(cfg.starts);
    std::vector<detail::StartOutcome> outcomes(starts);

    if (basis.cols() == 1) {
        // a one-dimensional subspace holds a single ray
        const ComplexVector psi = basis.col(0);
        const double v = objective(psi);
        if (!std::isfinite(v)) throw OptimizerFailure("objective returned a non-finite value");
        for (auto& o : outcomes) o = {v, psi, true};
    } else {
        const detail::SubspaceSearch search(objective, basis, cfg);
        const unsigned workers = std::min<unsigned>(cfg.threads, static_cast<unsigned>(starts));
        std::vector<std::exception_ptr> errors(workers);
        auto work = [&](unsigned w) {
            try {
                for (std::size_t k = w; k < starts; k += workers) {
                    outcomes[k] = search.run(cfg.seed + k);
                }
            } catch (...) {
                errors[w] = std::current_exception();
            }
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        }
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    OptimizerResult result;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& o : outcomes) {
        result.per_start_values.push_back(o.value);
        if (o.converged) ++result.starts_converged;
        best = std::min(best, o.value);
    }
    if (result.starts_converged == 0) {
        throw OptimizerFailure("no optimizer start converged within " +
                               std::to_string(cfg.max_iterations) + " iterations");
    }
    // lowest start index within value_tolerance of the best value wins
    for (std::size_t k = 0; k < starts; ++k) {
        if (outcomes[k].value <= best + cfg.value_tolerance) {
            result.best_start = static_cast<int>(k);
            result.value = outcomes[k].value;
            result.minimizer = PureState::normalized(outcomes[k].state);
            break;
        }
    }
    return result;
}

inline OptimizerResult minimize_over_pure_states(const StateObjective& objective, long dim,
                                                 const OptimizerConfig& cfg) {
    if (dim < 1 || dim > kMaxDim) {
        throw InvalidArgument("minimize_over_pure_states: dimension out of range");
    }
    return minimize_in_subspace(objective, ComplexMatrix::Identity(dim, dim), cfg);
}

/// Numerical infimum of S^ρ(A) + S^ρ(B) over states. Pure states suffice
/// because the objective is concave in ρ.
inline OptimizerResult lambda_d_numeric(const HermitianObservable& a, const HermitianObservable& b,
                                        const OptimizerConfig& cfg, double log_base = kNaturalBase) {
    detail::require_same_dim(a.dim(), b.dim(), "lambda_d_numeric");
    const ObservableChain only_a{&a};
    const ObservableChain only_b{&b};
    return minimize_over_pure_states(
        [&](const ComplexVector& psi) {
            return chain_entropy_sum(psi, only_a, log_base) + chain_entropy_sum(psi, only_b, log_base);
        },
        a.dim(), cfg);
}

/// Numerical infimum of the entropy sum for measuring A then B on one ensemble.
inline OptimizerResult lambda_s_numeric(const HermitianObservable& a, const HermitianObservable& b,
                                        const OptimizerConfig& cfg, double log_base = kNaturalBase) {
    detail::require_same_dim(a.dim(), b.dim(), "lambda_s_numeric");
    const ObservableChain chain{&a, &b};
    return minimize_over_pure_states(
        [&](const ComplexVector& psi) { return chain_entropy_sum(psi, chain, log_base); }, a.dim(), cfg);
}

/// Numerical infimum of the entropy sum for measuring A, B, C in sequence.
inline OptimizerResult lambda_s3_numeric(const HermitianObservable& a, const HermitianObservable& b,
                                         const HermitianObservable& c, const OptimizerConfig& cfg,
                                         double log_base = kNaturalBase) {
    detail::require_same_dim(a.dim(), b.dim(), "lambda_s3_numeric");
    detail::require_same_dim(a.dim(), c.dim(), "lambda_s3_numeric");
    const ObservableChain chain{&a, &b, &c};
    return minimize_over_pure_states(
        [&](const ComplexVector& psi) { return chain_entropy_sum(psi, chain, log_base); }, a.dim(), cfg);
}

}  // namespace seqent
