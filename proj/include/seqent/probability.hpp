#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace seqent {

inline constexpr double kClipTolerance = 1e-12;   // negatives above −1e-12 are roundoff
inline constexpr double kTotalTolerance = 1e-9;   // allowed |Σp − 1| before renormalizing

namespace detail {

// Clips roundoff negatives, rejects anything worse, renormalizes to unit total.
inline void sanitize_probabilities(std::vector<double>& p, const char* what) {
    if (p.empty()) {
        throw InvalidDistribution(std::string(what) + ": empty distribution");
    }
    double total = 0.0;
    for (double& x : p) {
        if (!std::isfinite(x)) {
            throw InvalidDistribution(std::string(what) + ": non-finite probability");
        }
        if (x < 0.0) {
            if (x < -kClipTolerance) {
                throw InvalidDistribution(std::string(what) + ": negative probability " +
                                          std::to_string(x));
            }
            x = 0.0;
        }
        total += x;
    }
    if (std::abs(total - 1.0) > kTotalTolerance) {
        throw InvalidDistribution(std::string(what) + ": probabilities sum to " +
                                  std::to_string(total));
    }
    for (double& x : p) x /= total;
}

}  // namespace detail

/// Nonnegative weights summing to one.
class ProbabilityDistribution {
public:
    explicit ProbabilityDistribution(std::vector<double> weights) : weights_(std::move(weights)) {
        detail::sanitize_probabilities(weights_, "ProbabilityDistribution");
    }

    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t i) const { return weights_[i]; }

    double mean(const std::vector<double>& values) const {
        double m = 0.0;
        for (std::size_t i = 0; i < size(); ++i) m += weights_[i] * values.at(i);
        return m;
    }

private:
    std::vector<double> weights_;
};

}  // namespace seqent
