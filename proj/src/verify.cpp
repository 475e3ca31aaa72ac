#include "balldesign/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace balldesign {
namespace {

std::vector<int> first_primes(int count) {
    std::vector<int> primes;
    for (int n = 2; static_cast<int>(primes.size()) < count; ++n) {
        bool prime = true;
        for (int p : primes) {
            if (p * p > n) break;
            if (n % p == 0) {
                prime = false;
                break;
            }
        }
        if (prime) primes.push_back(n);
    }
    return primes;
}

double radical_inverse(long index, int base) {
    double result = 0.0;
    double f = 1.0 / base;
    while (index > 0) {
        result += f * (index % base);
        index /= base;
        f /= base;
    }
    return result;
}

// Up to `count` orthonormal vectors spanning part of the complement of unit vector b, each
// taken from the coordinate axis with the largest remaining component.
std::vector<Eigen::VectorXd> complement_directions(const Eigen::VectorXd& b, int count) {
    std::vector<Eigen::VectorXd> basis{b};
    std::vector<Eigen::VectorXd> out;
    while (static_cast<int>(out.size()) < count) {
        Eigen::VectorXd best;
        double best_norm = 0.0;
        for (Eigen::Index i = 0; i < b.size(); ++i) {
            Eigen::VectorXd e = Eigen::VectorXd::Unit(b.size(), i);
            for (const auto& q : basis) e -= q.dot(e) * q;
            if (e.norm() > best_norm + 1e-12) {
                best_norm = e.norm();
                best = e;
            }
        }
        if (best_norm < 1e-8) break;
        best /= best_norm;
        basis.push_back(best);
        out.push_back(best);
    }
    return out;
}

}  // namespace

SensitivityFunction::SensitivityFunction(IntensityFamily fam, FullParameter beta,
                                         const Design& design)
    : fam_(fam),
      beta_(std::move(beta)),
      info_(info_matrix_discrete(fam_, beta_, design)),
      inverse_(info_.inverse()) {}

double SensitivityFunction::operator()(const Eigen::VectorXd& x) const {
    const int k = beta_.k();
    Eigen::VectorXd f(k + 1);
    f[0] = 1.0;
    f.tail(k) = x;
    return fam_.value(beta_.predictor(x)) * f.dot(inverse_ * f);
}

double sensitivity(const IntensityFamily& fam, const FullParameter& beta, const Design& design,
                   const Eigen::VectorXd& x) {
    return SensitivityFunction(fam, beta, design)(x);
}

std::vector<Eigen::VectorXd> sphere_grid(int k, int n) {
    if (k < 1 || k > kMaxDimension) throw std::invalid_argument("dimension k out of range");
    if (n < 2) throw std::invalid_argument("sphere grid needs at least 2 points");
    std::vector<Eigen::VectorXd> pts;
    pts.reserve(n);
    if (k == 1) {
        for (int i = 0; i < n; ++i) {
            pts.push_back(Eigen::VectorXd::Constant(1, i == n - 1 ? 1.0 : -1.0 + 2.0 * i / (n - 1)));
        }
        return pts;
    }
    if (k == 2) {
        for (int i = 0; i < n; ++i) {
            const double theta = 2.0 * std::numbers::pi * i / n;
            pts.push_back(Eigen::Vector2d(std::cos(theta), std::sin(theta)));
        }
        return pts;
    }
    if (k == 3) {
        const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < n; ++i) {
            const double z = 1.0 - (2.0 * i + 1.0) / n;
            const double r = std::sqrt((1.0 - z) * (1.0 + z));
            const double phi = golden_angle * i;
            pts.push_back(Eigen::Vector3d(r * std::cos(phi), r * std::sin(phi), z));
        }
        return pts;
    }
    // Pairs of Halton coordinates feed Box-Muller; the normalised Gaussian vector is uniform
    // on the sphere. Index offset skips the strongly correlated start of the sequence.
    constexpr long kHaltonOffset = 97;
    const int pairs = (k + 1) / 2;
    const auto primes = first_primes(2 * pairs);
    for (int i = 0; i < n; ++i) {
        const long idx = kHaltonOffset + i;
        Eigen::VectorXd g(2 * pairs);
        for (int p = 0; p < pairs; ++p) {
            const double u1 = radical_inverse(idx, primes[2 * p]);
            const double u2 = radical_inverse(idx, primes[2 * p + 1]);
            const double r = std::sqrt(-2.0 * std::log(u1));
            g[2 * p] = r * std::cos(2.0 * std::numbers::pi * u2);
            g[2 * p + 1] = r * std::sin(2.0 * std::numbers::pi * u2);
        }
        Eigen::VectorXd v = g.head(k);
        pts.push_back(v / v.norm());
    }
    return pts;
}

Certificate certify(const IntensityFamily& fam, const FullParameter& beta, const Design& design,
                    const CertifyOptions& opts) {
    const int k = beta.k();
    return certify_in_frame(fam, beta, design, opts, Eigen::MatrixXd::Identity(k, k),
                            Eigen::VectorXd::Zero(k));
}

Certificate certify_in_frame(const IntensityFamily& fam, const FullParameter& beta,
                             const Design& design, const CertifyOptions& opts,
                             const Eigen::MatrixXd& axes, const Eigen::VectorXd& center) {
    if (opts.grid_n < 1000) throw std::invalid_argument("certify needs grid_n >= 1000");
    if (!(opts.slack > 0.0)) throw std::invalid_argument("certify needs slack > 0");
    const int k = beta.k();
    if (axes.rows() != k || axes.cols() != k || center.size() != k) {
        throw std::invalid_argument("frame dimension does not match beta");
    }

    const SensitivityFunction psi(fam, beta, design);
    Certificate cert;
    cert.bound = k + 1.0;
    cert.slack = opts.slack;
    cert.max_sensitivity = -std::numeric_limits<double>::infinity();

    auto visit_region_point = [&](const Eigen::VectorXd& x) {
        const double v = psi(x);
        ++cert.grid_points;
        if (v > cert.max_sensitivity) {
            cert.max_sensitivity = v;
            cert.argmax_point = x;
        }
        return v;
    };
    auto visit = [&](const Eigen::VectorXd& u) { visit_region_point(axes * u + center); };

    const auto grid = sphere_grid(k, opts.grid_n);
    for (const auto& u : grid) visit(u);

    // psi is constant on the orbits around the slope direction, so a fine scan along that axis
    // resolves the only direction in which it varies.
    if (k >= 2) {
        Eigen::VectorXd slope = axes.transpose() * beta.slope();
        const Eigen::VectorXd b =
            slope.norm() > 0.0 ? Eigen::VectorXd(slope.normalized()) : Eigen::VectorXd::Unit(k, 0);
        auto perps = complement_directions(b, std::min(k - 1, 2));
        perps.push_back(-perps.front());
        const int n_scan = opts.orbit_scan_n > 0 ? opts.orbit_scan_n
                                                 : std::max(opts.grid_n / 10, 1000);
        for (int i = 0; i < n_scan; ++i) {
            const double t = (i == n_scan - 1) ? 1.0 : -1.0 + 2.0 * i / (n_scan - 1);
            const double r = std::sqrt(std::max(0.0, (1.0 - t) * (1.0 + t)));
            for (const auto& e : perps) visit(Eigen::VectorXd(t * b + r * e));
        }
    }

    // Interior spot checks.
    visit(Eigen::VectorXd::Zero(k));
    for (std::size_t i = 0; i < std::min<std::size_t>(grid.size(), 64); ++i) {
        visit(Eigen::VectorXd(0.5 * grid[i]));
    }

    cert.support_equality_gap = 0.0;
    for (const auto& x : design.points) {
        const double v = visit_region_point(x);
        cert.support_equality_gap = std::max(cert.support_equality_gap, std::abs(v - cert.bound));
    }

    cert.passed = cert.max_sensitivity <= cert.bound + opts.slack &&
                  cert.support_equality_gap <= opts.slack;
    return cert;
}

MarginalOptimum brute_force_marginal(const IntensityFamily& fam, const CanonicalProblem& prob,
                                     int grid_x, int grid_w) {
    prob.validate();
    if (grid_x < 200 || grid_w < 200) throw std::invalid_argument("brute-force grids need >= 200");
    const int k = prob.k;

    std::vector<double> xs(grid_x), log_q(grid_x), q_ring(grid_x);
    for (int i = 0; i < grid_x; ++i) {
        xs[i] = (i == grid_x - 1) ? 1.0 : -1.0 + 2.0 * i / (grid_x - 1);
        const double qv = q(fam, prob, xs[i]);
        log_q[i] = std::log(qv);
        q_ring[i] = qv * (1.0 - xs[i]) * (1.0 + xs[i]);
    }
    std::vector<double> ws(grid_w), log_ww(grid_w);
    for (int j = 0; j < grid_w; ++j) {
        ws[j] = (j + 1.0) / (grid_w + 1.0);
        log_ww[j] = std::log(ws[j] * (1.0 - ws[j]));
    }

    // det = w(1-w) q11 q12 (x11-x12)^2 * [(w q11 (1-x11^2) + (1-w) q12 (1-x12^2)) / (k-1)]^(k-1)
    MarginalOptimum best;
    best.log_det = -std::numeric_limits<double>::infinity();
    best.x_step = 2.0 / (grid_x - 1);
    best.w_step = 1.0 / (grid_w + 1);
    constexpr double kTie = 1e-12;
    for (int i = grid_x - 1; i >= 0; --i) {
        for (int j = i - 1; j >= 0; --j) {
            const double base = log_q[i] + log_q[j] + 2.0 * std::log(xs[i] - xs[j]);
            for (int m = 0; m < grid_w; ++m) {
                double ld = base + log_ww[m];
                if (k > 1) {
                    const double trailing =
                        (ws[m] * q_ring[i] + (1.0 - ws[m]) * q_ring[j]) / (k - 1);
                    if (!(trailing > 0.0)) continue;
                    ld += (k - 1) * std::log(trailing);
                }
                // Ties (mirror-symmetric intensities) go to the larger x11 found first.
                if (!std::isfinite(ld)) continue;
                if (!std::isfinite(best.log_det) ||
                    ld > best.log_det + kTie * std::max(1.0, std::abs(best.log_det))) {
                    best.x11 = xs[i];
                    best.x12 = xs[j];
                    best.w11 = ws[m];
                    best.log_det = ld;
                }
            }
        }
    }
    return best;
}

}  // namespace balldesign
