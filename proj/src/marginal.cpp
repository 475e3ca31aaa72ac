#include "balldesign/marginal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "balldesign/infomat.hpp"

namespace balldesign {
namespace {

constexpr double kInitialEdge = 1e-9;
constexpr double kSmallestEdge = 1e-12;
constexpr int kK1ScanPoints = 2000;

struct Root {
    double x;
    double residual;
};

// Bisection on [lo, hi] for a function with g(lo) >= 0 > g(hi).
template <class G>
Root bisect(G&& g, double lo, double hi, double g_lo, double g_hi, double tol) {
    if (g_lo == 0.0) return {lo, 0.0};
    for (;;) {
        const double mid = lo + 0.5 * (hi - lo);
        if (!(mid > lo && mid < hi)) break;
        const double gm = g(mid);
        if (gm == 0.0) return {mid, 0.0};
        if (gm > 0.0) {
            lo = mid;
            g_lo = gm;
        } else {
            hi = mid;
            g_hi = gm;
        }
        if (hi - lo < tol && std::min(std::abs(g_lo), std::abs(g_hi)) <= tol) break;
    }
    return std::abs(g_lo) <= std::abs(g_hi) ? Root{lo, std::abs(g_lo)} : Root{hi, std::abs(g_hi)};
}

// The right end 1 - eps of the search interval, shrunk until g turns negative there.
template <class G>
double right_edge(G&& g) {
    for (double eps = kInitialEdge; eps >= kSmallestEdge * 0.999; eps /= 10.0) {
        if (g(1.0 - eps) < 0.0) return 1.0 - eps;
    }
    throw std::runtime_error(
        "solve_x12: no sign change near x = 1; the intensity violates (A1)/(A2)");
}

double weight_pole(int k) { return 1.0 / (k + 1); }

MarginalSolution make_solution(int k, double x12, MarginalMethod method, double residual) {
    MarginalSolution s;
    s.x12 = x12;
    s.w11 = weight_pole(k);
    s.w12 = 1.0 - s.w11;
    s.method = method;
    s.residual = residual;
    return s;
}

MarginalSolution solve_k_ge_2(const IntensityFamily& fam, const CanonicalProblem& prob,
                              double tol) {
    auto g = [&](double x) { return defining_equation(fam, prob, x); };
    const double hi = right_edge(g);
    double lo = 0.0;
    bool found = false;
    for (double eps = kInitialEdge; eps >= kSmallestEdge * 0.999; eps /= 10.0) {
        if (g(-1.0 + eps) >= 0.0) {
            lo = -1.0 + eps;
            found = true;
            break;
        }
    }
    if (!found) {
        throw std::runtime_error(
            "solve_x12: no sign change near x = -1; the intensity violates (A1)/(A2)");
    }
    const Root r = bisect(g, lo, hi, g(lo), g(hi), tol);
    return make_solution(prob.k, r.x, MarginalMethod::RootFind, r.residual);
}

// k = 1: every downward crossing of q'/q - 2/(1-x) is a local maximum of the criterion, and so
// is the boundary -1 when g(-1) < 0. Candidates are compared by their log-determinants.
MarginalSolution solve_k1(const IntensityFamily& fam, const CanonicalProblem& prob, double tol) {
    auto g = [&](double x) { return defining_equation(fam, prob, x); };
    const double hi = right_edge(g);

    std::vector<Root> roots;
    double x_prev = -1.0;
    double g_prev = g(-1.0);
    const double g_left = g_prev;
    for (int i = 1; i <= kK1ScanPoints; ++i) {
        const double x = (i == kK1ScanPoints) ? hi : -1.0 + (hi + 1.0) * i / kK1ScanPoints;
        const double gx = g(x);
        if (g_prev >= 0.0 && gx < 0.0) roots.push_back(bisect(g, x_prev, x, g_prev, gx, tol));
        x_prev = x;
        g_prev = gx;
    }

    struct Candidate {
        double x;
        double residual;
        MarginalMethod method;
    };
    std::vector<Candidate> cands;
    if (g_left < 0.0) cands.push_back({-1.0, 0.0, MarginalMethod::BoundaryK1});
    for (const auto& r : roots) cands.push_back({r.x, r.residual, MarginalMethod::RootFind});
    if (cands.empty()) throw std::runtime_error("solve_x12: no admissible candidate for k = 1");

    const auto best = std::max_element(cands.begin(), cands.end(), [&](auto& a, auto& b) {
        return log_det_objective(fam, prob, a.x) < log_det_objective(fam, prob, b.x);
    });
    MarginalSolution s = make_solution(1, best->x, best->method, best->residual);
    s.ambiguous = cands.size() > 1;
    for (const auto& c : cands) s.candidates.push_back(c.x);
    return s;
}

}  // namespace

std::string_view to_string(MarginalMethod m) {
    switch (m) {
        case MarginalMethod::ClosedFormPoisson: return "closed-form-poisson";
        case MarginalMethod::RootFind: return "root-find";
        case MarginalMethod::BoundaryK1: return "boundary-k1";
        case MarginalMethod::DegenerateBeta1Zero: return "degenerate-beta1-zero";
    }
    return "unknown";
}

double defining_equation(const IntensityFamily& fam, const CanonicalProblem& prob, double x12) {
    const double lhs = log_deriv_ratio(fam, prob, x12);
    if (prob.k == 1) return lhs - 2.0 / (1.0 - x12);
    const double k = prob.k;
    return lhs - 2.0 * (1.0 + k * x12) / (k * (1.0 - x12) * (1.0 + x12));
}

MarginalSolution solve_x12(const IntensityFamily& fam, const CanonicalProblem& prob,
                           SolveOptions opts) {
    prob.validate();
    if (!(prob.beta1 > 0.0)) {
        throw std::invalid_argument("solve_x12 needs beta1 > 0; use the degenerate design");
    }
    if (!(opts.tol > 0.0)) throw std::invalid_argument("solver tolerance must be > 0");

    if (fam.kind() == IntensityFamily::Kind::Poisson && !opts.force_root_find) {
        return make_solution(prob.k, poisson_x12(prob.k, prob.beta1),
                             MarginalMethod::ClosedFormPoisson, 0.0);
    }
    return prob.k == 1 ? solve_k1(fam, prob, opts.tol) : solve_k_ge_2(fam, prob, opts.tol);
}

MarginalSolution degenerate_marginal(int k) {
    if (k < 1 || k > kMaxDimension) throw std::invalid_argument("dimension k out of range");
    return make_solution(k, -1.0 / k, MarginalMethod::DegenerateBeta1Zero, 0.0);
}

double poisson_x12(int k, double beta1) {
    if (k < 1) throw std::invalid_argument("poisson_x12: k must be >= 1");
    if (!(beta1 >= 0.0)) throw std::invalid_argument("poisson_x12: beta1 must be >= 0");
    // (-1 + sqrt(D)) / beta1 rewritten as (beta1 - 2/k) / (1 + sqrt(D)), with
    // D = (beta1 - 1/k)^2 + 1 - 1/k^2. Cancellation-free and equal to -1/k at beta1 = 0.
    const double kd = k;
    if (k == 1) return beta1 <= 1.0 ? -1.0 : 1.0 - 2.0 / beta1;
    const double root = std::hypot(beta1 - 1.0 / kd, std::sqrt(1.0 - 1.0 / (kd * kd)));
    return (beta1 - 2.0 / kd) / (1.0 + root);
}

double poisson_x12_limit(double beta1) {
    if (!(beta1 >= 0.0)) throw std::invalid_argument("poisson_x12_limit: beta1 must be >= 0");
    return beta1 / (1.0 + std::hypot(1.0, beta1));
}

double limit_x12(const IntensityFamily& fam, double beta0, double beta1, double tol) {
    if (!(beta1 >= 0.0)) throw std::invalid_argument("limit_x12: beta1 must be >= 0");
    if (beta1 == 0.0) return 0.0;
    if (fam.kind() == IntensityFamily::Kind::Poisson) return poisson_x12_limit(beta1);
    const CanonicalProblem prob{2, beta0, beta1};
    prob.validate();
    auto g = [&](double x) {
        return log_deriv_ratio(fam, prob, x) - 2.0 * x / ((1.0 - x) * (1.0 + x));
    };
    const double hi = right_edge(g);
    const double lo = -hi;
    if (!(g(lo) >= 0.0)) throw std::runtime_error("limit_x12: no sign change near x = -1");
    return bisect(g, lo, hi, g(lo), g(hi), tol).x;
}

double negbin_beta1_of_x12(double a, double beta0, int k, double x12, LambertBranch branch) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw std::invalid_argument("a must be >= 0");
    if (k < 2) throw std::invalid_argument("negbin_beta1_of_x12 needs k >= 2");
    if (!(x12 > -1.0 && x12 < 1.0)) throw std::domain_error("x12 must lie in (-1, 1)");
    const double kd = k;
    const double rhs = 2.0 * (1.0 + kd * x12) / (kd * (1.0 - x12) * (1.0 + x12));
    const double z = -a * x12 * rhs * std::exp(beta0 + rhs * x12);
    if (z < -1.0 / std::numbers::e) {
        throw std::domain_error("Lambert W argument below -1/e; no slope maps to this x12");
    }
    // -W(z)/x12 + rhs, with W(z)/z = e^{-W(z)} removing the 0/0 at x12 = 0.
    const double w = lambert_w(z, branch);
    return rhs * (1.0 + a * std::exp(beta0 + rhs * x12 - w));
}

}  // namespace balldesign
