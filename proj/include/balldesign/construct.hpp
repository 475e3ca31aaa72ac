#pragma once

#include <vector>

#include <Eigen/Dense>

#include "balldesign/design.hpp"
#include "balldesign/intensity.hpp"
#include "balldesign/marginal.hpp"

namespace balldesign {

/// d+1 unit vectors in R^d with pairwise inner products -1/d. The first vertex is e1; the
/// others sit at x1 = -1/d over a scaled (d-1)-simplex, recursively.
std::vector<Eigen::VectorXd> simplex_vertices(int d);

/// Equally weighted pole (1, 0, ..., 0) plus a regular (k-1)-simplex inscribed in the slice
/// x1 = x12 of the unit sphere. Rejects x12 outside [-1, 1) and x12 = -1 when k >= 2.
Design canonical_design(int k, double x12);

inline constexpr double kReflectionFloor = 1e-3;

/// Symmetric orthogonal H with H u = -b, where u = (1, ..., 1)/sqrt(k) and b is the unit
/// vector `direction`: the reflection along v = b + u while |v| >= kReflectionFloor. Closer to
/// b = -u it is still symmetric, with det -1 except for k = 1 and k = 3.
Eigen::MatrixXd householder_alignment(const Eigen::VectorXd& direction);

/// Optimal design for a pole direction b and level x12: b itself and the columns of
/// b 1' (x12 + s/sqrt(k-1)) + H sqrt(k/(k-1)) s, s = sqrt(1 - x12^2). For k = 1 the design is
/// {b, x12 b}.
Design oriented_design(const Eigen::VectorXd& direction, double x12);

/// Full pipeline for general beta with a nonzero slope: rotate to the canonical problem,
/// solve for x12, orient the design along the slope. Throws std::invalid_argument for a zero
/// slope.
Design rotated_design(const IntensityFamily& fam, const FullParameter& beta,
                      SolveOptions opts = {});

/// Canonical problem (beta0, ||slope||, 0, ..., 0) of a full parameter.
CanonicalProblem canonical_problem(const FullParameter& beta);

/// Equally weighted vertices of the regular k-simplex on the unit sphere.
Design degenerate_design(int k);

}  // namespace balldesign
