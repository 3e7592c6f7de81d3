#pragma once

#include <cmath>
#include <vector>

#include "wprs/core.hpp"
#include "wprs/iqi.hpp"

namespace wprs {
namespace quadrature {

struct QuadratureConfig {
    int y = 200; // Gauss-Chebyshev node count

    void validate() const {
        if (y < 4)
            throw core::invalid_argument_error("quad.y must be at least 4");
    }
};

// Gauss-Chebyshev rule (first kind nodes, weight compensated by sqrt(1-d^2))
// for finite integrals:
//   int_0^U f(x) dx ~= (pi*U / (2Y)) * sum_{l=1..Y} sqrt(1-d_l^2) f(U*(d_l+1)/2)
// with d_l = cos((2l-1) pi / (2Y)).  Nodes are precomputed once and reused
// across every integrand sharing a node count.
class ChebyshevRule {
public:
    explicit ChebyshevRule(int y) {
        QuadratureConfig{y}.validate();
        nodes_.reserve(static_cast<std::size_t>(y));
        weights_.reserve(static_cast<std::size_t>(y));
        for (int l = 1; l <= y; ++l) {
            const double d = std::cos((2.0 * l - 1.0) * iqi::pi / (2.0 * y));
            nodes_.push_back(d);
            weights_.push_back(std::sqrt(1.0 - d * d));
        }
    }

    int size() const { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }

    // Integrate f over [0, upper].  upper == 0 collapses to 0 exactly.
    template <typename F>
    double integrate(F&& f, double upper) const {
        core::check_nonnegative(upper, "upper");
        if (upper == 0.0)
            return 0.0;
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            acc += weights_[i] * f(0.5 * upper * (nodes_[i] + 1.0));
        return acc * iqi::pi * upper / (2.0 * nodes_.size());
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

template <typename F>
inline double integrate_chebyshev(F&& f, double upper, int y) {
    return ChebyshevRule(y).integrate(static_cast<F&&>(f), upper);
}

} // namespace quadrature
} // namespace wprs
