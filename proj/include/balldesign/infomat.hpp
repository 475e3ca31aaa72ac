#pragma once

#include <optional>

#include <Eigen/Dense>

#include "balldesign/design.hpp"
#include "balldesign/intensity.hpp"

namespace balldesign {

/// Symmetric (k+1)x(k+1) information matrix.
///
/// Matrices built from the marginal closed form remember their block structure
/// (2x2 leading block, scalar multiple of the identity behind it) and use it for
/// the determinant; everything else goes through partially pivoted LU.
class InfoMatrix {
public:
    explicit InfoMatrix(Eigen::MatrixXd m);
    static InfoMatrix block_diagonal(const Eigen::Matrix2d& lead, double trailing, int k);

    const Eigen::MatrixXd& matrix() const noexcept { return m_; }
    int size() const noexcept { return static_cast<int>(m_.rows()); }
    double operator()(int i, int j) const { return m_(i, j); }

    double determinant() const;
    /// -inf when the determinant is not positive.
    double log_determinant() const;
    /// Reciprocal condition estimate in the 1-norm.
    double rcond() const;
    /// Throws std::runtime_error when rcond() < kSingularRcond.
    Eigen::MatrixXd inverse() const;

private:
    struct Blocks {
        Eigen::Matrix2d lead;
        double trailing;
    };
    Eigen::MatrixXd m_;
    std::optional<Blocks> blocks_;
};

inline constexpr double kSingularRcond = 1e-12;

/// sum_i w_i lambda(f(x_i)'beta) f(x_i) f(x_i)', f(x) = (1, x').
InfoMatrix info_matrix_discrete(const IntensityFamily& fam, const FullParameter& beta,
                                const Design& design);

/// Closed-form matrix of the rotation-invariant design whose marginal puts w11 on x1 = 1 and
/// 1 - w11 on x12. k = 1 gives the bare 2x2 block.
InfoMatrix info_matrix_marginal(const IntensityFamily& fam, const CanonicalProblem& prob,
                                double x12, double w11);
/// Same with the optimal pole weight 1/(k+1).
InfoMatrix info_matrix_marginal(const IntensityFamily& fam, const CanonicalProblem& prob,
                                double x12);

/// log det of the optimally weighted marginal matrix, evaluated from its factored form.
/// Requires x12 in (-1, 1) for k >= 2 and [-1, 1) for k = 1 (std::domain_error otherwise).
double log_det_objective(const IntensityFamily& fam, const CanonicalProblem& prob, double x12);

}  // namespace balldesign
