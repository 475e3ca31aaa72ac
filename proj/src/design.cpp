#include "balldesign/design.hpp"

#include <cmath>
#include <stdexcept>

namespace balldesign {

void Design::validate() const {
    if (points.empty()) throw std::invalid_argument("design has no support points");
    if (points.size() != weights.size()) {
        throw std::invalid_argument("design has mismatched point and weight counts");
    }
    const auto k = points.front().size();
    if (k < 1) throw std::invalid_argument("design points must have dimension >= 1");
    long double sum = 0.0L;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].size() != k) throw std::invalid_argument("design points differ in dimension");
        if (!points[i].allFinite()) throw std::invalid_argument("design point is not finite");
        if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
            throw std::invalid_argument("design weights must be positive");
        }
        sum += weights[i];
    }
    if (std::abs(static_cast<double>(sum - 1.0L)) > 1e-15) {
        throw std::invalid_argument("design weights must sum to 1");
    }
}

void Design::validate_in_unit_ball(double slack) const {
    validate();
    for (const auto& p : points) {
        if (p.norm() > 1.0 + slack) throw std::invalid_argument("design point outside the unit ball");
    }
}

FullParameter::FullParameter(Eigen::VectorXd beta) : beta_(std::move(beta)) {
    if (beta_.size() < 2) throw std::invalid_argument("beta needs an intercept and k >= 1 slopes");
    if (!beta_.allFinite()) throw std::invalid_argument("beta must be finite");
}

double FullParameter::predictor(const Eigen::VectorXd& x) const {
    if (x.size() != k()) throw std::invalid_argument("point dimension does not match beta");
    return beta_[0] + beta_.tail(k()).dot(x);
}

}  // namespace balldesign
