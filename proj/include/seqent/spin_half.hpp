#pragma once

// Spin-1/2 components σ·n₁ and σ·n₂ with n₁·n₂ = cos θ: closed-form bound
// curves in θ and the optimal distinct-measurement bound with its three regimes.

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "bounds.hpp"
#include "entropy.hpp"
#include "errors.hpp"
#include "hermitian.hpp"
#include "optimizer.hpp"

namespace seqent::spin {

using std::numbers::pi;

inline double degrees_to_radians(double deg) { return deg * pi / 180.0; }
inline double radians_to_degrees(double rad) { return rad * 180.0 / pi; }

class UnitVector3 {
public:
    UnitVector3(double x, double y, double z) : x_(x), y_(y), z_(z) {
        const double n2 = x * x + y * y + z * z;
        if (!std::isfinite(n2) || std::abs(n2 - 1.0) > 1e-12) {
            throw InvalidArgument("UnitVector3: squared norm " + std::to_string(n2) + " is not 1");
        }
    }

    /// Direction in the x–z plane at angle theta from the z axis.
    static UnitVector3 in_xz_plane(double theta) {
        return {std::sin(theta), 0.0, std::cos(theta)};
    }

    static UnitVector3 normalized(double x, double y, double z) {
        const double n = std::sqrt(x * x + y * y + z * z);
        if (!(n > 0.0)) throw InvalidArgument("UnitVector3::normalized: zero vector");
        return {x / n, y / n, z / n};
    }

    double x() const { return x_; }
    double y() const { return y_; }
    double z() const { return z_; }
    double dot(const UnitVector3& o) const { return x_ * o.x_ + y_ * o.y_ + z_ * o.z_; }

private:
    double x_, y_, z_;
};

/// σ·n
inline ComplexMatrix spin_matrix(double x, double y, double z) {
    ComplexMatrix m(2, 2);
    m << Complex(z, 0.0), Complex(x, -y), Complex(x, y), Complex(-z, 0.0);
    return m;
}

inline HermitianObservable spin_observable(const UnitVector3& n) {
    return HermitianObservable(spin_matrix(n.x(), n.y(), n.z()));
}

namespace detail {

inline void require_theta(double theta) {
    if (!(theta >= -1e-12 && theta <= pi + 1e-12)) {
        throw InvalidArgument("theta must lie in [0, pi]");
    }
}

// binary entropy of (c, 1 − c)
inline double binary_entropy(double c, double log_base) {
    return seqent::detail::entropy_of_weights({c, 1.0 - c}, log_base);
}

}  // namespace detail

/// Entropy of σ·n₂ in an eigenstate of σ·n₁.
inline double lambda_s_theta(double theta, double log_base = kNaturalBase) {
    detail::require_theta(theta);
    const double c = std::cos(theta / 2.0);
    return detail::binary_entropy(c * c, log_base);
}

inline double deutsch_theta(double theta, double log_base = kNaturalBase) {
    detail::require_theta(theta);
    const double m = std::max(std::abs(std::cos(theta / 2.0)), std::abs(std::sin(theta / 2.0)));
    return std::max(0.0, 2.0 * std::log(2.0 / (1.0 + m)) * seqent::detail::log_base_factor(log_base));
}

/// Maassen–Uffink bound log(1 / max{cos²θ/2, sin²θ/2}).
inline double mu_theta(double theta, double log_base = kNaturalBase) {
    detail::require_theta(theta);
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    return std::max(0.0, -std::log(std::max(c * c, s * s)) * seqent::detail::log_base_factor(log_base));
}

/// Low-regime optimum, attained at an eigenstate of σ·(n₁ + n₂).
inline double sum_direction_value(double theta, double log_base = kNaturalBase) {
    const double c = std::cos(theta / 4.0);
    return 2.0 * detail::binary_entropy(c * c, log_base);
}

/// High-regime optimum, attained at an eigenstate of σ·(n₁ − n₂).
inline double difference_direction_value(double theta, double log_base = kNaturalBase) {
    const double c1 = std::cos(pi / 4.0 + theta / 4.0);
    const double c2 = std::cos(pi / 4.0 - theta / 4.0);
    return detail::binary_entropy(c1 * c1, log_base) + detail::binary_entropy(c2 * c2, log_base);
}

/// cos(θ/2) ln[(1 + cos θ/2)/(1 − cos θ/2)] − 2; strictly decreasing on (0, π).
inline double regime_boundary_residual(double theta) {
    const double c = std::cos(theta / 2.0);
    return c * std::log((1.0 + c) / (1.0 - c)) - 2.0;
}

/// Root of regime_boundary_residual by bisection.
inline double theta_star() {
    static const double root = [] {
        double lo = 1e-9;      // residual → +∞ as θ → 0
        double hi = pi - 1e-9; // residual → −2 as θ → π
        for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (regime_boundary_residual(mid) > 0.0 ? lo : hi) = mid;
        }
        return std::abs(regime_boundary_residual(lo)) < std::abs(regime_boundary_residual(hi)) ? lo : hi;
    }();
    return root;
}

enum class Regime { low, middle_numeric, high };

inline std::string_view to_string(Regime r) {
    switch (r) {
        case Regime::low: return "low";
        case Regime::middle_numeric: return "middle-numeric";
        case Regime::high: return "high";
    }
    return "unknown";
}

inline Regime regime_of(double theta) {
    const double ts = theta_star();
    if (theta <= ts) return Regime::low;
    if (theta >= pi - ts) return Regime::high;
    return Regime::middle_numeric;
}

/// Optimizer settings for the middle regime (two real parameters).
inline OptimizerConfig middle_regime_config(std::uint64_t seed = 0) {
    OptimizerConfig cfg;
    cfg.starts = 32;
    cfg.seed = seed;
    return cfg;
}

struct OptimalDistinct {
    double value = 0.0;
    Regime regime = Regime::low;
};

/// Optimal distinct-measurement bound for two spin components at angle theta.
inline OptimalDistinct sanchez_ruiz_theta(double theta, const OptimizerConfig& cfg = middle_regime_config(),
                                          double log_base = kNaturalBase) {
    detail::require_theta(theta);
    const Regime regime = regime_of(theta);
    switch (regime) {
        case Regime::low: return {sum_direction_value(theta, log_base), regime};
        case Regime::high: return {difference_direction_value(theta, log_base), regime};
        case Regime::middle_numeric: break;
    }
    const HermitianObservable a = spin_observable(UnitVector3(0.0, 0.0, 1.0));
    const HermitianObservable b = spin_observable(UnitVector3::in_xz_plane(theta));
    return {lambda_d_numeric(a, b, cfg, log_base).value, regime};
}

struct ThetaCurvePoint {
    double theta = 0.0;  // radians
    double lambda_s = 0.0;
    double lambda_d = 0.0;
    double lambda_d2 = 0.0;
    double lambda_d1 = 0.0;
    Regime regime = Regime::low;

    /// lambda_s ≥ lambda_d ≥ lambda_d2 ≥ 2·lambda_d1 up to slack.
    bool chain_holds(double slack) const {
        return lambda_s >= lambda_d - slack && lambda_d >= lambda_d2 - slack &&
               lambda_d2 >= 2.0 * lambda_d1 - slack;
    }
};

/// Memoizes middle-regime optimizer results per angle; safe for concurrent use.
class ThetaCurve {
public:
    explicit ThetaCurve(OptimizerConfig cfg = middle_regime_config(), double log_base = kNaturalBase)
        : cfg_(cfg), log_base_(log_base) {}

    ThetaCurvePoint at(double theta) {
        ThetaCurvePoint p;
        p.theta = theta;
        p.lambda_s = lambda_s_theta(theta, log_base_);
        p.lambda_d2 = mu_theta(theta, log_base_);
        p.lambda_d1 = deutsch_theta(theta, log_base_);
        p.regime = regime_of(theta);
        p.lambda_d = optimal(theta);
        return p;
    }

    double log_base() const { return log_base_; }

private:
    double optimal(double theta) {
        {
            std::lock_guard lock(mutex_);
            if (auto it = cache_.find(theta); it != cache_.end()) return it->second;
        }
        const double v = sanchez_ruiz_theta(theta, cfg_, log_base_).value;
        std::lock_guard lock(mutex_);
        cache_.emplace(theta, v);
        return v;
    }

    OptimizerConfig cfg_;
    double log_base_;
    std::mutex mutex_;
    std::map<double, double> cache_;
};

inline ThetaCurvePoint theta_curve_point(double theta, const OptimizerConfig& cfg = middle_regime_config(),
                                         double log_base = kNaturalBase) {
    return ThetaCurve(cfg, log_base).at(theta);
}

/// Rows θ = 0°, 10°, …, 90° in natural log.
inline std::vector<ThetaCurvePoint> table1(const OptimizerConfig& cfg = middle_regime_config()) {
    ThetaCurve curve(cfg);
    std::vector<ThetaCurvePoint> rows;
    for (int deg = 0; deg <= 90; deg += 10) rows.push_back(curve.at(degrees_to_radians(deg)));
    return rows;
}

}  // namespace seqent::spin
