#pragma once

#include <Eigen/Dense>

#include "balldesign/design.hpp"
#include "balldesign/verify.hpp"

namespace balldesign {

/// Ellipsoid {A u + c : ||u|| <= 1} with A symmetric positive definite, equivalently
/// {x : (x-c)' A^{-2} (x-c) <= 1}.
struct EllipsoidRegion {
    Eigen::VectorXd center;
    Eigen::MatrixXd axes;

    static EllipsoidRegion unit_ball(int k);

    int k() const noexcept { return static_cast<int>(center.size()); }
    /// Throws std::invalid_argument unless axes is k x k, symmetric and positive definite.
    void validate() const;
    bool contains(const Eigen::VectorXd& x, double slack = 1e-12) const;
};

/// Parameter of the equivalent unit-ball problem under x = A u + c:
/// beta0' = beta0 + slope'c, slope' = A slope.
FullParameter pull_back_parameter(const EllipsoidRegion& region, const FullParameter& beta);

/// Maps every support point u to A u + c; weights are unchanged.
Design push_forward_design(const EllipsoidRegion& region, const Design& design_on_ball);

/// certify_in_frame on the region's own frame; beta and design live on the ellipsoid.
Certificate certify_on_region(const IntensityFamily& fam, const FullParameter& beta,
                              const Design& design, const EllipsoidRegion& region,
                              const CertifyOptions& opts = {});

}  // namespace balldesign
