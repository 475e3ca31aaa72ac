#pragma once

#include <vector>

#include <Eigen/Dense>

namespace balldesign {

/// Finite design: support points in R^k with positive weights summing to one.
struct Design {
    std::vector<Eigen::VectorXd> points;
    std::vector<double> weights;

    int dimension() const { return points.empty() ? 0 : static_cast<int>(points.front().size()); }
    std::size_t size() const { return points.size(); }

    /// Throws std::invalid_argument on empty or ragged designs, non-positive weights, or a
    /// weight sum off by more than 1e-15.
    void validate() const;

    /// validate() plus ||x|| <= 1 + slack for every point.
    void validate_in_unit_ball(double slack = 1e-12) const;
};

/// Parameter vector (beta0, beta1, ..., betak) of the linear predictor.
class FullParameter {
public:
    explicit FullParameter(Eigen::VectorXd beta);

    int k() const { return static_cast<int>(beta_.size()) - 1; }
    double intercept() const { return beta_[0]; }
    Eigen::VectorXd slope() const { return beta_.tail(k()); }
    const Eigen::VectorXd& vector() const { return beta_; }

    /// beta0 + beta_slope' x
    double predictor(const Eigen::VectorXd& x) const;

private:
    Eigen::VectorXd beta_;
};

}  // namespace balldesign
