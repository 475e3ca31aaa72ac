#include "balldesign/lambert_w.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace balldesign {
namespace {

constexpr double kInvE = 1.0 / std::numbers::e;
constexpr int kMaxIterations = 50;

double initial_guess(double z, LambertBranch branch) {
    const bool lower = branch == LambertBranch::Lower;
    if (z < (lower ? -0.25 : -0.32)) {
        // Series about the branch point -1/e.
        double p = std::sqrt(std::max(0.0, 2.0 * (std::numbers::e * z + 1.0)));
        if (lower) p = -p;
        return -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    }
    if (lower) {
        const double l1 = std::log(-z);
        const double l2 = std::log(-l1);
        return l1 - l2 + l2 / l1;
    }
    if (z < 3.0) return std::log1p(z);
    const double l1 = std::log(z);
    const double l2 = std::log(l1);
    return l1 - l2 + l2 / l1;
}

}  // namespace

double lambert_w(double z, LambertBranch branch) {
    if (std::isnan(z) || z < -kInvE) {
        throw std::domain_error("lambert_w: argument below -1/e");
    }
    if (branch == LambertBranch::Lower && !(z < 0.0)) {
        throw std::domain_error("lambert_w: lower branch needs z in [-1/e, 0)");
    }
    if (branch == LambertBranch::Principal && z == 0.0) return 0.0;
    if (std::isinf(z)) return z;
    if (std::numbers::e * z + 1.0 <= 0.0) return -1.0;

    double w = initial_guess(z, branch);
    for (int it = 0; it < kMaxIterations; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - z;
        const double wp1 = w + 1.0;
        if (wp1 == 0.0) break;
        const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        w -= step;
        if (std::abs(step) <= 4 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) {
            break;
        }
    }
    return w;
}

}  // namespace balldesign
