#include "balldesign/infomat.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace balldesign {

InfoMatrix::InfoMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 2) {
        throw std::invalid_argument("information matrix must be square with size >= 2");
    }
}

InfoMatrix InfoMatrix::block_diagonal(const Eigen::Matrix2d& lead, double trailing, int k) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k + 1, k + 1);
    m.topLeftCorner<2, 2>() = lead;
    for (int i = 2; i <= k; ++i) m(i, i) = trailing;
    InfoMatrix out(std::move(m));
    out.blocks_ = Blocks{lead, trailing};
    return out;
}

double InfoMatrix::determinant() const {
    if (blocks_) {
        const int tail = size() - 2;
        return blocks_->lead.determinant() * std::pow(blocks_->trailing, tail);
    }
    return m_.partialPivLu().determinant();
}

double InfoMatrix::log_determinant() const {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    if (blocks_) {
        const double lead = blocks_->lead.determinant();
        const int tail = size() - 2;
        if (!(lead > 0.0)) return kNegInf;
        if (tail == 0) return std::log(lead);
        if (!(blocks_->trailing > 0.0)) return kNegInf;
        return std::log(lead) + tail * std::log(blocks_->trailing);
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m_);
    const double det = lu.determinant();
    if (!(det > 0.0)) return kNegInf;
    const auto& lum = lu.matrixLU();
    double acc = 0.0;
    for (int i = 0; i < lum.rows(); ++i) acc += std::log(std::abs(lum(i, i)));
    return acc;
}

double InfoMatrix::rcond() const { return m_.partialPivLu().rcond(); }

Eigen::MatrixXd InfoMatrix::inverse() const {
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m_);
    if (!(lu.rcond() >= kSingularRcond)) {
        throw std::runtime_error("information matrix is singular");
    }
    Eigen::MatrixXd inv = lu.inverse();
    return 0.5 * (inv + inv.transpose());
}

InfoMatrix info_matrix_discrete(const IntensityFamily& fam, const FullParameter& beta,
                                const Design& design) {
    design.validate();
    const int k = beta.k();
    if (design.dimension() != k) {
        throw std::invalid_argument("design dimension does not match beta");
    }
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(k + 1, k + 1);
    Eigen::VectorXd f(k + 1);
    for (std::size_t i = 0; i < design.size(); ++i) {
        f[0] = 1.0;
        f.tail(k) = design.points[i];
        const double lambda = fam.value(beta.predictor(design.points[i]));
        m.selfadjointView<Eigen::Lower>().rankUpdate(f, design.weights[i] * lambda);
    }
    m.triangularView<Eigen::StrictlyUpper>() = m.transpose();
    return InfoMatrix(std::move(m));
}

InfoMatrix info_matrix_marginal(const IntensityFamily& fam, const CanonicalProblem& prob,
                                double x12, double w11) {
    prob.validate();
    if (!(w11 >= 0.0 && w11 <= 1.0)) throw std::invalid_argument("w11 must lie in [0, 1]");
    const double q1 = q(fam, prob, 1.0);
    const double q2 = q(fam, prob, x12);
    const double w12 = 1.0 - w11;
    Eigen::Matrix2d lead;
    lead(0, 0) = w11 * q1 + w12 * q2;
    lead(0, 1) = lead(1, 0) = w11 * q1 + w12 * q2 * x12;
    lead(1, 1) = w11 * q1 + w12 * q2 * x12 * x12;
    if (prob.k == 1) return InfoMatrix::block_diagonal(lead, 0.0, 1);
    // The pole contributes nothing to the trailing block since 1 - 1^2 = 0.
    const double trailing = w12 * q2 * (1.0 - x12) * (1.0 + x12) / (prob.k - 1);
    return InfoMatrix::block_diagonal(lead, trailing, prob.k);
}

InfoMatrix info_matrix_marginal(const IntensityFamily& fam, const CanonicalProblem& prob,
                                double x12) {
    return info_matrix_marginal(fam, prob, x12, 1.0 / (prob.k + 1));
}

double log_det_objective(const IntensityFamily& fam, const CanonicalProblem& prob, double x12) {
    prob.validate();
    const int k = prob.k;
    const bool ok = (k == 1) ? (x12 >= -1.0 && x12 < 1.0) : (x12 > -1.0 && x12 < 1.0);
    if (!ok) throw std::domain_error("x12 outside the admissible range for log_det_objective");
    const double kd = k;
    const double q1 = q(fam, prob, 1.0);
    const double q2 = q(fam, prob, x12);
    const double lead = std::log(q1 * q2 * (1.0 - x12) * (1.0 - x12) * kd / ((kd + 1) * (kd + 1)));
    if (k == 1) return lead;
    return lead + (kd - 1) * (std::log(q2 * (1.0 - x12) * (1.0 + x12) * kd / (kd + 1)) -
                              std::log(kd - 1));
}

}  // namespace balldesign
