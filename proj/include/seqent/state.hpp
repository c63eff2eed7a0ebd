#pragma once

// Quantum states, the Lüders collapse map, Wigner sequential joint
// probabilities, and a seeded collapse-chain sampler.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "hermitian.hpp"
#include "probability.hpp"

namespace seqent {

inline constexpr double kStateTolerance = 1e-10;

/// Unit vector in C^dim.
class PureState {
public:
    explicit PureState(ComplexVector v) : v_(std::move(v)) {
        if (v_.size() == 0 || !v_.allFinite()) {
            throw InvalidArgument("PureState: empty or non-finite amplitudes");
        }
        if (std::abs(v_.norm() - 1.0) > kStateTolerance) {
            throw InvalidArgument("PureState: vector norm " + std::to_string(v_.norm()) + " is not 1");
        }
    }

    static PureState normalized(const ComplexVector& v) {
        const double n = v.norm();
        if (!(n > 0.0) || !std::isfinite(n)) {
            throw InvalidArgument("PureState::normalized: zero or non-finite vector");
        }
        return PureState(v / n);
    }

    static PureState basis(long dim, long index) {
        ComplexVector v = ComplexVector::Zero(dim);
        v(index) = 1.0;
        return PureState(std::move(v));
    }

    const ComplexVector& vector() const { return v_; }
    long dim() const { return v_.size(); }

    /// |⟨this|other⟩|²
    double fidelity(const PureState& other) const {
        detail::require_same_dim(dim(), other.dim(), "PureState::fidelity");
        return std::norm(v_.dot(other.v_));
    }

private:
    ComplexVector v_;
};

/// Positive semidefinite, unit-trace Hermitian matrix.
class DensityOperator {
public:
    explicit DensityOperator(const ComplexMatrix& m) {
        detail::require_square_finite(m, "DensityOperator");
        detail::require_dim_in_range(m.rows(), "DensityOperator");
        if (hermiticity_defect(m) > kStateTolerance) {
            throw InvalidArgument("DensityOperator: matrix is not Hermitian");
        }
        ComplexMatrix sym = 0.5 * (m + m.adjoint());
        const double tr = sym.trace().real();
        if (std::abs(tr - 1.0) > kStateTolerance) {
            throw InvalidArgument("DensityOperator: trace " + std::to_string(tr) + " is not 1");
        }
        const Eigensystem es = eigh(sym);
        if (es.values(0) < -kStateTolerance) {
            throw InvalidArgument("DensityOperator: negative eigenvalue " +
                                  std::to_string(es.values(0)));
        }
        if (es.values(0) < 0.0) {
            const Eigen::VectorXd clipped = es.values.cwiseMax(0.0);
            sym = es.vectors * clipped.cast<Complex>().asDiagonal() * es.vectors.adjoint();
            sym /= sym.trace().real();
        }
        m_ = std::move(sym);
    }

    explicit DensityOperator(const PureState& psi)
        : m_(psi.vector() * psi.vector().adjoint()) {
        detail::require_dim_in_range(psi.dim(), "DensityOperator");
    }

    static DensityOperator maximally_mixed(long dim) {
        return DensityOperator(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
    }

    const ComplexMatrix& matrix() const { return m_; }
    long dim() const { return m_.rows(); }

    /// Tr[ρ X]
    Complex expectation(const ComplexMatrix& x) const {
        detail::require_same_dim(dim(), x.rows(), "DensityOperator::expectation");
        return (m_ * x).trace();
    }

    /// For maps that preserve positivity and trace by construction.
    struct Unchecked {};
    DensityOperator(Unchecked, ComplexMatrix m) : m_(std::move(m)) {}

private:
    ComplexMatrix m_;
};

/// Nonnegative table over 1–3 outcome axes (labelled by eigenvalues), summing to one.
class JointDistribution {
public:
    JointDistribution(std::vector<std::vector<double>> axes, std::vector<double> table)
        : axes_(std::move(axes)), table_(std::move(table)) {
        if (axes_.empty()) {
            throw InvalidArgument("JointDistribution: at least one axis required");
        }
        std::size_t cells = 1;
        for (const auto& ax : axes_) {
            if (ax.empty()) throw InvalidArgument("JointDistribution: empty axis");
            cells *= ax.size();
        }
        if (cells != table_.size()) {
            throw InvalidArgument("JointDistribution: table size does not match axes");
        }
        detail::sanitize_probabilities(table_, "JointDistribution");
    }

    std::size_t rank() const { return axes_.size(); }
    const std::vector<std::vector<double>>& axes() const { return axes_; }
    const std::vector<double>& table() const { return table_; }

    std::vector<std::size_t> shape() const {
        std::vector<std::size_t> s;
        for (const auto& ax : axes_) s.push_back(ax.size());
        return s;
    }

    std::size_t flat_index(std::span<const std::size_t> idx) const {
        if (idx.size() != rank()) throw InvalidArgument("JointDistribution: wrong index arity");
        std::size_t flat = 0;
        for (std::size_t a = 0; a < rank(); ++a) {
            if (idx[a] >= axes_[a].size()) throw InvalidArgument("JointDistribution: index out of range");
            flat = flat * axes_[a].size() + idx[a];
        }
        return flat;
    }

    std::vector<std::size_t> unflatten(std::size_t flat) const {
        std::vector<std::size_t> idx(rank());
        for (std::size_t a = rank(); a-- > 0;) {
            idx[a] = flat % axes_[a].size();
            flat /= axes_[a].size();
        }
        return idx;
    }

    double operator()(std::size_t i, std::size_t j) const {
        const std::size_t idx[] = {i, j};
        return table_[flat_index(idx)];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t k) const {
        const std::size_t idx[] = {i, j, k};
        return table_[flat_index(idx)];
    }

    /// Joint distribution of the listed axes (in the given order) with the rest summed out.
    JointDistribution marginal_over(const std::vector<std::size_t>& keep) const {
        std::vector<std::vector<double>> axes;
        std::size_t cells = 1;
        for (std::size_t a : keep) {
            axes.push_back(axes_.at(a));
            cells *= axes_[a].size();
        }
        std::vector<double> out(cells, 0.0);
        for (std::size_t flat = 0; flat < table_.size(); ++flat) {
            const auto idx = unflatten(flat);
            std::size_t sub = 0;
            for (std::size_t a : keep) sub = sub * axes_[a].size() + idx[a];
            out[sub] += table_[flat];
        }
        return JointDistribution(std::move(axes), std::move(out));
    }

    ProbabilityDistribution marginal(std::size_t axis) const {
        return ProbabilityDistribution(marginal_over({axis}).table_);
    }

private:
    std::vector<std::vector<double>> axes_;
    std::vector<double> table_;
};

using ObservableChain = std::vector<const HermitianObservable*>;

namespace detail {

inline void require_chain_dims(long dim, const ObservableChain& chain, const char* what) {
    for (const auto* o : chain) require_same_dim(dim, o->dim(), what);
}

inline double real_trace_product(const ComplexMatrix& x, const ComplexMatrix& y) {
    // Tr[XY] without forming the product
    return (x.transpose().cwiseProduct(y)).sum().real();
}

}  // namespace detail

/// Σ_i P(a_i) ρ P(a_i)
inline DensityOperator luders_map(const DensityOperator& rho, const HermitianObservable& a) {
    detail::require_same_dim(rho.dim(), a.dim(), "luders_map");
    ComplexMatrix out = ComplexMatrix::Zero(rho.dim(), rho.dim());
    for (const auto& p : a.spectrum().projectors) out += p * rho.matrix() * p;
    return DensityOperator(DensityOperator::Unchecked{}, std::move(out));
}

/// Outcome probabilities Tr[ρ P(a_i)] without renormalization.
inline std::vector<double> raw_probabilities(const DensityOperator& rho, const HermitianObservable& a) {
    detail::require_same_dim(rho.dim(), a.dim(), "raw_probabilities");
    std::vector<double> p;
    for (const auto& proj : a.spectrum().projectors) {
        p.push_back(detail::real_trace_product(rho.matrix(), proj));
    }
    return p;
}

inline ProbabilityDistribution outcome_distribution(const DensityOperator& rho,
                                                    const HermitianObservable& a) {
    return ProbabilityDistribution(raw_probabilities(rho, a));
}

/// Wigner formula for an arbitrary measurement sequence: nested conjugation by projectors.
inline JointDistribution wigner_joint(const DensityOperator& rho, const ObservableChain& chain) {
    if (chain.empty()) throw InvalidArgument("wigner_joint: empty observable chain");
    detail::require_chain_dims(rho.dim(), chain, "wigner_joint");
    std::vector<ComplexMatrix> branches{rho.matrix()};
    for (const auto* obs : chain) {
        std::vector<ComplexMatrix> next;
        next.reserve(branches.size() * obs->outcome_count());
        for (const auto& b : branches) {
            for (const auto& p : obs->spectrum().projectors) next.push_back(p * b * p);
        }
        branches = std::move(next);
    }
    std::vector<double> table;
    table.reserve(branches.size());
    for (const auto& b : branches) table.push_back(b.trace().real());
    std::vector<std::vector<double>> axes;
    for (const auto* obs : chain) axes.push_back(obs->eigenvalues());
    return JointDistribution(std::move(axes), std::move(table));
}

inline JointDistribution wigner_joint_2(const DensityOperator& rho, const HermitianObservable& a,
                                        const HermitianObservable& b) {
    return wigner_joint(rho, {&a, &b});
}

inline JointDistribution wigner_joint_3(const DensityOperator& rho, const HermitianObservable& a,
                                        const HermitianObservable& b, const HermitianObservable& c) {
    return wigner_joint(rho, {&a, &b, &c});
}

/// Per-step outcome marginals of a pure state pushed through a measurement chain:
/// p_m(k) = Σ_prefix ‖P_k ⋯ P_{i_1} ψ‖². Unnormalized fast path for optimizer objectives.
inline std::vector<std::vector<double>> chain_marginals(const ComplexVector& psi,
                                                        const ObservableChain& chain) {
    std::vector<std::vector<double>> marginals;
    std::vector<ComplexVector> branches{psi};
    for (std::size_t step = 0; step < chain.size(); ++step) {
        const auto& projectors = chain[step]->spectrum().projectors;
        std::vector<double> m(projectors.size(), 0.0);
        std::vector<ComplexVector> next;
        const bool last = step + 1 == chain.size();
        if (!last) next.reserve(branches.size() * projectors.size());
        for (const auto& b : branches) {
            for (std::size_t k = 0; k < projectors.size(); ++k) {
                ComplexVector v = projectors[k] * b;
                m[k] += v.squaredNorm();
                if (!last) next.push_back(std::move(v));
            }
        }
        marginals.push_back(std::move(m));
        branches = std::move(next);
    }
    return marginals;
}

/// Marginal distributions of every axis of a joint table.
inline std::vector<ProbabilityDistribution> sequential_marginals(const JointDistribution& joint) {
    std::vector<ProbabilityDistribution> out;
    for (std::size_t a = 0; a < joint.rank(); ++a) out.push_back(joint.marginal(a));
    return out;
}

/// max_j |Tr[ℰ(ρ) P^B(b_j)] − Tr[ρ P^B(b_j)]|, where ℰ is the Lüders map of A.
inline double interference_gap(const DensityOperator& rho, const HermitianObservable& a,
                               const HermitianObservable& b) {
    detail::require_same_dim(rho.dim(), a.dim(), "interference_gap");
    detail::require_same_dim(rho.dim(), b.dim(), "interference_gap");
    const auto after = raw_probabilities(luders_map(rho, a), b);
    const auto direct = raw_probabilities(rho, b);
    double gap = 0.0;
    for (std::size_t j = 0; j < after.size(); ++j) gap = std::max(gap, std::abs(after[j] - direct[j]));
    return gap;
}

/// Empirical outcome-tuple counts from the sampler.
struct OutcomeCounts {
    std::vector<std::vector<double>> axes;
    std::vector<std::uint64_t> counts;  // row-major over axes
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    std::vector<double> frequencies() const {
        std::vector<double> f;
        f.reserve(counts.size());
        for (auto c : counts) f.push_back(static_cast<double>(c) / static_cast<double>(samples));
        return f;
    }

    /// Outcome frequencies of a single step.
    std::vector<double> marginal_frequencies(std::size_t axis) const {
        std::vector<double> f(axes.at(axis).size(), 0.0);
        std::size_t inner = 1;
        for (std::size_t a = axis + 1; a < axes.size(); ++a) inner *= axes[a].size();
        for (std::size_t flat = 0; flat < counts.size(); ++flat) {
            f[(flat / inner) % axes[axis].size()] += static_cast<double>(counts[flat]);
        }
        for (double& x : f) x /= static_cast<double>(samples);
        return f;
    }
};

/// Draws n outcome sequences by repeated sample-and-collapse. Conditional
/// distributions are memoized per outcome prefix; the result is a pure function of seed.
inline OutcomeCounts sample_sequence(const DensityOperator& rho, const ObservableChain& chain,
                                     std::uint64_t n, std::uint64_t seed) {
    if (n < 1) throw InvalidArgument("sample_sequence: sample count must be at least 1");
    if (chain.empty()) throw InvalidArgument("sample_sequence: empty observable chain");
    detail::require_chain_dims(rho.dim(), chain, "sample_sequence");

    struct Node {
        std::vector<double> cumulative;
        std::vector<ComplexMatrix> collapsed;  // normalized post-measurement states
        std::size_t last_positive = 0;
    };
    std::map<std::vector<std::size_t>, Node> cache;
    auto node_for = [&](const std::vector<std::size_t>& prefix,
                        const ComplexMatrix& state) -> const Node& {
        auto it = cache.find(prefix);
        if (it != cache.end()) return it->second;
        const auto& projectors = chain[prefix.size()]->spectrum().projectors;
        Node node;
        double acc = 0.0;
        for (const auto& p : projectors) {
            ComplexMatrix post = p * state * p;
            double w = std::max(post.trace().real(), 0.0);
            acc += w;
            node.cumulative.push_back(acc);
            node.collapsed.push_back(w > 0.0 ? ComplexMatrix(post / w) : ComplexMatrix());
            if (w > 0.0) node.last_positive = node.cumulative.size() - 1;
        }
        return cache.emplace(prefix, std::move(node)).first->second;
    };

    OutcomeCounts out;
    std::size_t cells = 1;
    for (const auto* o : chain) {
        out.axes.push_back(o->eigenvalues());
        cells *= o->outcome_count();
    }
    out.counts.assign(cells, 0);
    out.samples = n;
    out.seed = seed;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<std::size_t> prefix;
    for (std::uint64_t s = 0; s < n; ++s) {
        prefix.clear();
        const ComplexMatrix* state = &rho.matrix();
        std::size_t flat = 0;
        for (std::size_t step = 0; step < chain.size(); ++step) {
            const Node& node = node_for(prefix, *state);
            const double u = unif(rng) * node.cumulative.back();
            std::size_t k = node.last_positive;
            for (std::size_t i = 0; i < node.cumulative.size(); ++i) {
                const double prev = i == 0 ? 0.0 : node.cumulative[i - 1];
                if (node.cumulative[i] > prev && u < node.cumulative[i]) {
                    k = i;
                    break;
                }
            }
            prefix.push_back(k);
            flat = flat * node.cumulative.size() + k;
            state = &node.collapsed[k];
        }
        ++out.counts[flat];
    }
    return out;
}

namespace detail {

inline ComplexVector complex_normal_vector(long dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexVector v(dim);
    for (long i = 0; i < dim; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = Complex(re, im);
    }
    return v;
}

inline ComplexMatrix complex_normal_matrix(long dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (long c = 0; c < dim; ++c) {
        for (long r = 0; r < dim; ++r) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(r, c) = Complex(re, im);
        }
    }
    return g;
}

}  // namespace detail

/// Haar-distributed pure state (normalized complex Gaussian vector).
inline PureState random_pure_state(long dim, std::uint64_t seed) {
    detail::require_dim_in_range(dim, "random_pure_state");
    std::mt19937_64 rng(seed);
    return PureState::normalized(detail::complex_normal_vector(dim, rng));
}

inline DensityOperator random_state(long dim, std::uint64_t seed) {
    return DensityOperator(random_pure_state(dim, seed));
}

/// Full-rank mixed state G G† / Tr[G G†] with complex Gaussian G.
inline DensityOperator random_mixed_state(long dim, std::uint64_t seed) {
    detail::require_dim_in_range(dim, "random_mixed_state");
    std::mt19937_64 rng(seed);
    const ComplexMatrix g = detail::complex_normal_matrix(dim, rng);
    ComplexMatrix m = g * g.adjoint();
    m /= m.trace().real();
    return DensityOperator(DensityOperator::Unchecked{}, 0.5 * (m + m.adjoint()));
}

/// (G + G†)/2 with complex Gaussian G; nondegenerate with probability one.
inline HermitianObservable random_observable(long dim, std::uint64_t seed) {
    detail::require_dim_in_range(dim, "random_observable");
    std::mt19937_64 rng(seed);
    const ComplexMatrix g = detail::complex_normal_matrix(dim, rng);
    return HermitianObservable(0.5 * (g + g.adjoint()));
}

/// U diag(eigenvalues) U† with U from random_unitary; repeated entries give degenerate spectra.
inline HermitianObservable random_observable_with_spectrum(const std::vector<double>& eigenvalues,
                                                           std::uint64_t seed);

/// Unitary taken from the eigenbasis of a random Hermitian matrix.
inline ComplexMatrix random_unitary(long dim, std::uint64_t seed) {
    detail::require_dim_in_range(dim, "random_unitary");
    std::mt19937_64 rng(seed);
    const ComplexMatrix g = detail::complex_normal_matrix(dim, rng);
    return eigh(0.5 * (g + g.adjoint())).vectors;
}

inline HermitianObservable random_observable_with_spectrum(const std::vector<double>& eigenvalues,
                                                           std::uint64_t seed) {
    const long dim = static_cast<long>(eigenvalues.size());
    const ComplexMatrix u = random_unitary(dim, seed);
    Eigen::VectorXd d(dim);
    for (long i = 0; i < dim; ++i) d(i) = eigenvalues[static_cast<std::size_t>(i)];
    const ComplexMatrix m = u * d.cast<Complex>().asDiagonal() * u.adjoint();
    return HermitianObservable(0.5 * (m + m.adjoint()));
}

}  // namespace seqent
