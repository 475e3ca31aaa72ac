#include "balldesign/construct.hpp"

#include <cmath>
#include <stdexcept>

namespace balldesign {
namespace {

void check_level(int k, double x12) {
    if (!(x12 >= -1.0 && x12 < 1.0)) throw std::invalid_argument("x12 must lie in [-1, 1)");
    if (k >= 2 && x12 == -1.0) throw std::invalid_argument("x12 = -1 is infeasible for k >= 2");
}

std::vector<double> equal_weights(std::size_t n) { return std::vector<double>(n, 1.0 / n); }

}  // namespace

std::vector<Eigen::VectorXd> simplex_vertices(int d) {
    if (d < 1 || d > kMaxDimension) throw std::invalid_argument("simplex dimension out of range");
    if (d == 1) return {Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Constant(1, -1.0)};

    const double dd = d;
    const double ring = std::sqrt(1.0 - 1.0 / (dd * dd));
    std::vector<Eigen::VectorXd> out;
    out.reserve(d + 1);
    out.push_back(Eigen::VectorXd::Unit(d, 0));
    for (const auto& sub : simplex_vertices(d - 1)) {
        Eigen::VectorXd v(d);
        v[0] = -1.0 / dd;
        v.tail(d - 1) = ring * sub;
        out.push_back(std::move(v));
    }
    return out;
}

Design canonical_design(int k, double x12) {
    if (k < 1 || k > kMaxDimension) throw std::invalid_argument("dimension k out of range");
    check_level(k, x12);
    Design d;
    d.points.push_back(Eigen::VectorXd::Unit(k, 0));
    if (k == 1) {
        d.points.push_back(Eigen::VectorXd::Constant(1, x12));
    } else {
        const double radius = std::sqrt((1.0 - x12) * (1.0 + x12));
        for (const auto& s : simplex_vertices(k - 1)) {
            Eigen::VectorXd p(k);
            p[0] = x12;
            p.tail(k - 1) = radius * s;
            d.points.push_back(std::move(p));
        }
    }
    d.weights = equal_weights(d.points.size());
    return d;
}

Eigen::MatrixXd householder_alignment(const Eigen::VectorXd& direction) {
    const auto k = direction.size();
    if (k < 1) throw std::invalid_argument("direction must be nonempty");
    const Eigen::VectorXd u = Eigen::VectorXd::Constant(k, 1.0 / std::sqrt(double(k)));
    const Eigen::VectorXd plus = direction + u;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(k, k);
    if (plus.norm() >= kReflectionFloor) {
        return id - (2.0 / plus.squaredNorm()) * plus * plus.transpose();
    }

    // direction is close to -u. Every symmetric orthogonal H with H u = -b is I - 2P for a
    // projector P with P u = m := (u + b)/2; rank 1 forces P onto m, which is ill-determined here.
    const Eigen::VectorXd minus = direction - u;
    if (k % 2 == 0 || k == 1 || k == 3) {
        // Negated reflection taking b to u: rank k-1, so det -1 only for even k.
        return -(id - (2.0 / minus.squaredNorm()) * minus * minus.transpose());
    }
    // Odd k >= 5: rank-3 projector onto a subspace of minus^perp that contains m.
    const Eigen::VectorXd m = 0.5 * plus;
    const Eigen::VectorXd w = minus.normalized();
    std::vector<Eigen::VectorXd> basis;
    auto add = [&](Eigen::VectorXd v) {
        v -= w.dot(v) * w;
        for (const auto& q : basis) v -= q.dot(v) * q;
        const double n = v.norm();
        if (n > 1e-3) basis.push_back(v / n);
    };
    if (m.norm() > 0.0) add(m.normalized());
    for (Eigen::Index i = 0; i < k && basis.size() < 3; ++i) add(Eigen::VectorXd::Unit(k, i));
    Eigen::MatrixXd h = id;
    for (const auto& q : basis) h -= 2.0 * q * q.transpose();
    return h;
}

Design oriented_design(const Eigen::VectorXd& direction, double x12) {
    const int k = static_cast<int>(direction.size());
    if (k < 1 || k > kMaxDimension) throw std::invalid_argument("dimension k out of range");
    if (std::abs(direction.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument("pole direction must be a unit vector");
    }
    check_level(k, x12);

    Design d;
    d.points.push_back(direction);
    if (k == 1) {
        d.points.push_back(x12 * direction);
    } else {
        const double kd = k;
        const double s = std::sqrt((1.0 - x12) * (1.0 + x12));
        const double shift = x12 + s / std::sqrt(kd - 1.0);
        const double scale = std::sqrt(kd / (kd - 1.0)) * s;
        const Eigen::MatrixXd cols =
            direction * Eigen::RowVectorXd::Constant(k, shift) +
            scale * householder_alignment(direction);
        for (int j = 0; j < k; ++j) d.points.push_back(cols.col(j));
    }
    d.weights = equal_weights(d.points.size());
    return d;
}

CanonicalProblem canonical_problem(const FullParameter& beta) {
    CanonicalProblem prob{beta.k(), beta.intercept(), beta.slope().norm()};
    prob.validate();
    return prob;
}

Design rotated_design(const IntensityFamily& fam, const FullParameter& beta, SolveOptions opts) {
    const CanonicalProblem prob = canonical_problem(beta);
    if (degenerate_design_flag(prob)) {
        throw std::invalid_argument("zero slope: use degenerate_design");
    }
    const MarginalSolution sol = solve_x12(fam, prob, opts);
    return oriented_design(beta.slope() / prob.beta1, sol.x12);
}

Design degenerate_design(int k) {
    Design d;
    d.points = simplex_vertices(k);
    d.weights = equal_weights(d.points.size());
    return d;
}

}  // namespace balldesign
