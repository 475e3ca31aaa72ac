#pragma once

#include <optional>

#include <Eigen/Dense>

#include "balldesign/design.hpp"
#include "balldesign/infomat.hpp"
#include "balldesign/intensity.hpp"

namespace balldesign {

/// psi(x) = lambda(f(x)'beta) f(x)' M^{-1} f(x) for a fixed design. The inverse is formed once.
class SensitivityFunction {
public:
    /// Throws std::runtime_error when M(design) is singular (rcond < kSingularRcond).
    SensitivityFunction(IntensityFamily fam, FullParameter beta, const Design& design);

    double operator()(const Eigen::VectorXd& x) const;

    const InfoMatrix& info() const noexcept { return info_; }
    int k() const noexcept { return beta_.k(); }

private:
    IntensityFamily fam_;
    FullParameter beta_;
    InfoMatrix info_;
    Eigen::MatrixXd inverse_;
};

double sensitivity(const IntensityFamily& fam, const FullParameter& beta, const Design& design,
                   const Eigen::VectorXd& x);

/// Kiefer-Wolfowitz check: psi <= k+1 over the region, with equality on the support.
struct Certificate {
    double max_sensitivity = 0.0;
    Eigen::VectorXd argmax_point;
    double bound = 0.0;
    long grid_points = 0;
    bool passed = false;
    double support_equality_gap = 0.0;
    double slack = 0.0;
};

struct CertifyOptions {
    /// Points of the quasi-uniform surface grid (>= 1000).
    int grid_n = 200000;
    double slack = 1e-6;
    /// Points of the 1-D scan along the canonical axis; 0 picks max(grid_n / 10, 1000).
    int orbit_scan_n = 0;
};

/// Deterministic quasi-uniform points on the unit sphere S_{k-1}: angles for k = 2, a
/// Fibonacci lattice for k = 3, normalised Box-Muller transforms of a Halton sequence for
/// k >= 4. For k = 1 an even grid over [-1, 1].
std::vector<Eigen::VectorXd> sphere_grid(int k, int n);

/// Certifies `design` on the unit ball.
Certificate certify(const IntensityFamily& fam, const FullParameter& beta, const Design& design,
                    const CertifyOptions& opts = {});

/// Certifies a design living on the image x = A u + c of the unit ball. The information matrix
/// and psi use the design points and beta as given; only candidate points are generated in
/// ball coordinates and mapped forward.
Certificate certify_in_frame(const IntensityFamily& fam, const FullParameter& beta,
                             const Design& design, const CertifyOptions& opts,
                             const Eigen::MatrixXd& axes, const Eigen::VectorXd& center);

/// Best two-point marginal {x11 -> w11, x12 -> 1 - w11} on a grid, x11 >= x12.
struct MarginalOptimum {
    double x11 = 0.0;
    double x12 = 0.0;
    double w11 = 0.0;
    double log_det = 0.0;
    double x_step = 0.0;
    double w_step = 0.0;
};

/// Exhaustive maximisation of the marginal log-determinant over x11, x12 in an even grid of
/// [-1, 1] (grid_x points) and w11 = j/(grid_w+1), j = 1..grid_w. Both grids need >= 200 points.
MarginalOptimum brute_force_marginal(const IntensityFamily& fam, const CanonicalProblem& prob,
                                     int grid_x, int grid_w);

}  // namespace balldesign
