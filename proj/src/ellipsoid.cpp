#include "balldesign/ellipsoid.hpp"

#include <stdexcept>

namespace balldesign {

EllipsoidRegion EllipsoidRegion::unit_ball(int k) {
    return {Eigen::VectorXd::Zero(k), Eigen::MatrixXd::Identity(k, k)};
}

void EllipsoidRegion::validate() const {
    const auto k = center.size();
    if (k < 1 || k > kMaxDimension) throw std::invalid_argument("region dimension out of range");
    if (axes.rows() != k || axes.cols() != k) {
        throw std::invalid_argument("region axes must be a k x k matrix");
    }
    if (!center.allFinite() || !axes.allFinite()) throw std::invalid_argument("region not finite");
    const double scale = std::max(1.0, axes.cwiseAbs().maxCoeff());
    if ((axes - axes.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("region axes must be symmetric");
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(axes, Eigen::EigenvaluesOnly);
    if (!(eig.eigenvalues().minCoeff() > 0.0)) {
        throw std::invalid_argument("region axes must be positive definite");
    }
}

bool EllipsoidRegion::contains(const Eigen::VectorXd& x, double slack) const {
    const Eigen::VectorXd u = axes.ldlt().solve(x - center);
    return u.norm() <= 1.0 + slack;
}

FullParameter pull_back_parameter(const EllipsoidRegion& region, const FullParameter& beta) {
    region.validate();
    if (beta.k() != region.k()) throw std::invalid_argument("beta does not match region dimension");
    Eigen::VectorXd out(beta.k() + 1);
    out[0] = beta.intercept() + beta.slope().dot(region.center);
    out.tail(beta.k()) = region.axes.transpose() * beta.slope();
    return FullParameter(std::move(out));
}

Design push_forward_design(const EllipsoidRegion& region, const Design& design_on_ball) {
    region.validate();
    if (design_on_ball.dimension() != region.k()) {
        throw std::invalid_argument("design does not match region dimension");
    }
    Design out;
    out.weights = design_on_ball.weights;
    out.points.reserve(design_on_ball.size());
    for (const auto& u : design_on_ball.points) out.points.push_back(region.axes * u + region.center);
    return out;
}

Certificate certify_on_region(const IntensityFamily& fam, const FullParameter& beta,
                              const Design& design, const EllipsoidRegion& region,
                              const CertifyOptions& opts) {
    region.validate();
    return certify_in_frame(fam, beta, design, opts, region.axes, region.center);
}

}  // namespace balldesign
