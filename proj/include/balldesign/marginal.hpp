#pragma once

#include <string_view>
#include <vector>

#include "balldesign/intensity.hpp"
#include "balldesign/lambert_w.hpp"

namespace balldesign {

enum class MarginalMethod { ClosedFormPoisson, RootFind, BoundaryK1, DegenerateBeta1Zero };

std::string_view to_string(MarginalMethod m);

/// Two-point marginal design on the canonical axis: the pole x11 = 1 with
/// weight 1/(k+1) and the level x12 with weight k/(k+1).
struct MarginalSolution {
    double x11 = 1.0;
    double x12 = 0.0;
    double w11 = 0.0;
    double w12 = 0.0;
    MarginalMethod method = MarginalMethod::RootFind;
    /// |lhs - rhs| of the defining equation at x12; 0 for closed forms and the boundary.
    double residual = 0.0;
    /// k = 1 only: more than one local maximiser was found and the winner was
    /// chosen by comparing log-determinants.
    bool ambiguous = false;
    /// k = 1 only: every local maximiser considered, boundary included.
    std::vector<double> candidates;
};

struct SolveOptions {
    /// Bisection stops once the bracket is narrower than tol and the residual is below tol
    /// (or the bracket cannot shrink further in double precision).
    double tol = 1e-12;
    /// Use the root finder even where a closed form exists (Poisson).
    bool force_root_find = false;
};

/// Solves q'(x)/q(x) = 2(1+kx)/(k(1-x^2)) for k >= 2, or q'/q = 2/(1-x) on [-1,1) for k = 1.
/// Throws std::invalid_argument for beta1 <= 0 or tol <= 0, and std::runtime_error when no
/// sign change can be bracketed.
MarginalSolution solve_x12(const IntensityFamily& fam, const CanonicalProblem& prob,
                           SolveOptions opts = {});

/// The beta1 = 0 level -1/k, reported with method DegenerateBeta1Zero.
MarginalSolution degenerate_marginal(int k);

/// Signed defining-equation residual: q'/q minus the right-hand side.
double defining_equation(const IntensityFamily& fam, const CanonicalProblem& prob, double x12);

/// Closed-form Poisson level. k >= 2: (-1 + sqrt(1 - 2 beta1/k + beta1^2)) / beta1, -1/k at 0.
/// k = 1: -1 on [0, 1], 1 - 2/beta1 beyond.
double poisson_x12(int k, double beta1);

/// k -> infinity limit of poisson_x12.
double poisson_x12_limit(double beta1);

/// k -> infinity level for any family: root of q'/q = 2x/(1-x^2). 0 at beta1 = 0.
double limit_x12(const IntensityFamily& fam, double beta0, double beta1, double tol = 1e-12);

/// Inverse negative-binomial relation: the slope beta1 whose optimal level is x12, through
/// Lambert W. Continuous through x12 = 0, where it returns (2/k)(1 + a e^beta0). Throws
/// std::domain_error at x12 = +-1 and outside the branch domain.
double negbin_beta1_of_x12(double a, double beta0, int k, double x12,
                           LambertBranch branch = LambertBranch::Principal);

/// True iff beta1 is exactly zero.
inline bool degenerate_design_flag(const CanonicalProblem& prob) noexcept {
    return prob.beta1 == 0.0;
}

}  // namespace balldesign
