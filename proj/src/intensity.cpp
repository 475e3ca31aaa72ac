#include "balldesign/intensity.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace balldesign {
namespace {

void require_finite_positive(double v, const char* what) {
    if (!std::isfinite(v) || !(v > 0.0)) {
        throw std::invalid_argument(std::string(what) + " must be finite and > 0");
    }
}

double parse_number(std::string_view text, std::string_view spec) {
    double v = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw std::invalid_argument("bad number in model spec '" + std::string(spec) + "'");
    }
    return v;
}

// phi(t) = 1 - (1 - e^{-t}) / t, the uniform-censoring event probability.
double uniform_censor_phi(double t) {
    if (t < 0.5) {
        // sum_{n>=2} (-1)^n t^{n-1} / n!
        double term = t / 2.0;
        double sum = term;
        for (int n = 3; n < 30; ++n) {
            term *= -t / n;
            sum += term;
        }
        return sum;
    }
    return 1.0 + std::expm1(-t) / t;
}

// t * phi'(t) = (1 - e^{-t} - t e^{-t}) / t
double uniform_censor_tdphi(double t) {
    if (t < 0.5) {
        // sum_{m>=2} (-1)^m (m-1) t^{m-1} / m!
        double pow_over_fact = t / 2.0;  // t^{m-1} / m!
        double sum = pow_over_fact;
        for (int m = 3; m < 30; ++m) {
            pow_over_fact *= t / m;
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            sum += sign * (m - 1) * pow_over_fact;
        }
        return sum;
    }
    return (-std::expm1(-t) - t * std::exp(-t)) / t;
}

// h(t) = 1 - e^{-t} (1 + t + t^2); the uniform-censoring lambda'' is -h(t)/t.
double uniform_censor_h(double t) {
    if (t < 0.5) {
        // -sum_{n>=2} (-1)^n (1/n! - 1/(n-1)! + 1/(n-2)!) t^n
        double inv_fact_n2 = 1.0;  // 1/(n-2)!
        double pow = t * t;
        double sum = 0.0;
        for (int n = 2; n < 30; ++n) {
            const double inv_fact_n1 = inv_fact_n2 / (n - 1);
            const double inv_fact_n = inv_fact_n1 / n;
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            sum -= sign * (inv_fact_n - inv_fact_n1 + inv_fact_n2) * pow;
            inv_fact_n2 = inv_fact_n1;
            pow *= t;
        }
        return sum;
    }
    return 1.0 - std::exp(-t) * (1.0 + t + t * t);
}

// log(1 + e^z) without overflow.
double log1p_exp(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

SignedLog signed_log(double v) {
    if (v == 0.0 || std::isnan(v)) return {};
    return {v > 0.0 ? 1 : -1, std::log(std::abs(v))};
}

void check_unit_interval(double x1) {
    if (!(x1 >= -1.0 && x1 <= 1.0)) {
        throw std::domain_error("x1 must lie in [-1, 1]");
    }
}

}  // namespace

IntensityFamily IntensityFamily::linear() { return {Kind::Linear, 0.0}; }
IntensityFamily IntensityFamily::poisson() { return {Kind::Poisson, 0.0}; }

IntensityFamily IntensityFamily::negbin(double a) {
    if (!std::isfinite(a) || a < 0.0) {
        throw std::invalid_argument("negbin overdispersion a must be finite and >= 0");
    }
    return {Kind::NegBin, a};
}

IntensityFamily IntensityFamily::censor_type1(double c) {
    require_finite_positive(c, "censoring time c");
    return {Kind::CensorTypeI, c};
}

IntensityFamily IntensityFamily::censor_uniform(double c) {
    require_finite_positive(c, "censoring horizon c");
    return {Kind::CensorUniform, c};
}

IntensityFamily IntensityFamily::censor_exp(double censor_rate) {
    require_finite_positive(censor_rate, "censor_rate");
    return {Kind::CensorExp, censor_rate};
}

IntensityFamily IntensityFamily::parse(std::string_view spec) {
    const auto colon = spec.find(':');
    const auto name = spec.substr(0, colon);
    auto keyed = [&](std::string_view key) {
        if (colon == std::string_view::npos) {
            throw std::invalid_argument("model '" + std::string(name) + "' needs " +
                                        std::string(key) + "=<value>");
        }
        const auto rest = spec.substr(colon + 1);
        const auto eq = rest.find('=');
        if (eq == std::string_view::npos || rest.substr(0, eq) != key) {
            throw std::invalid_argument("expected '" + std::string(key) + "=<value>' in '" +
                                        std::string(spec) + "'");
        }
        return parse_number(rest.substr(eq + 1), spec);
    };
    auto bare = [&] {
        if (colon != std::string_view::npos) {
            throw std::invalid_argument("model '" + std::string(name) + "' takes no parameters");
        }
    };

    if (name == "poisson") {
        bare();
        return poisson();
    }
    if (name == "linear") {
        bare();
        return linear();
    }
    if (name == "negbin") return negbin(keyed("a"));
    if (name == "censor-t1") return censor_type1(keyed("c"));
    if (name == "censor-unif") return censor_uniform(keyed("c"));
    if (name == "censor-exp") return censor_exp(keyed("rate"));
    throw std::invalid_argument("unknown model '" + std::string(spec) + "'");
}

std::string IntensityFamily::to_string() const {
    // Shortest representation that round-trips through parse().
    auto num = [](double v) {
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, ptr);
    };
    switch (kind_) {
        case Kind::Linear: return "linear";
        case Kind::Poisson: return "poisson";
        case Kind::NegBin: return "negbin:a=" + num(param_);
        case Kind::CensorTypeI: return "censor-t1:c=" + num(param_);
        case Kind::CensorUniform: return "censor-unif:c=" + num(param_);
        case Kind::CensorExp: return "censor-exp:rate=" + num(param_);
    }
    return {};
}

double IntensityFamily::value(double eta) const {
    switch (kind_) {
        case Kind::Linear: return 1.0;
        case Kind::Poisson: return std::exp(eta);
        case Kind::NegBin: return 1.0 / (std::exp(-eta) + param_);
        case Kind::CensorTypeI: return -std::expm1(-param_ * std::exp(eta));
        case Kind::CensorUniform: return uniform_censor_phi(param_ * std::exp(eta));
        case Kind::CensorExp: return 1.0 / (1.0 + param_ * std::exp(-eta));
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double IntensityFamily::derivative(double eta) const {
    switch (kind_) {
        case Kind::Linear: return 0.0;
        case Kind::Poisson: return std::exp(eta);
        case Kind::CensorTypeI: {
            const double t = param_ * std::exp(eta);
            return t * std::exp(-t);
        }
        case Kind::CensorUniform: return uniform_censor_tdphi(param_ * std::exp(eta));
        case Kind::NegBin:
        case Kind::CensorExp: return value(eta) * log_slope(eta);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

double IntensityFamily::log_slope(double eta) const {
    switch (kind_) {
        case Kind::Linear: return 0.0;
        case Kind::Poisson: return 1.0;
        case Kind::NegBin: {
            // 1 / (1 + a e^eta)
            if (param_ == 0.0) return 1.0;
            const double s = std::exp(-eta);
            return std::isinf(s) ? 1.0 : s / (s + param_);
        }
        case Kind::CensorTypeI: {
            // t / (e^t - 1)
            const double t = param_ * std::exp(eta);
            return t == 0.0 ? 1.0 : t / std::expm1(t);
        }
        case Kind::CensorUniform: {
            const double t = param_ * std::exp(eta);
            if (t == 0.0) return 1.0;
            return uniform_censor_tdphi(t) / uniform_censor_phi(t);
        }
        case Kind::CensorExp: {
            // rate / (e^eta + rate)
            const double rs = param_ * std::exp(-eta);
            return std::isinf(rs) ? 1.0 : rs / (1.0 + rs);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

SignedLog IntensityFamily::derivative_log(double eta) const {
    switch (kind_) {
        case Kind::Linear: return {};
        case Kind::Poisson: return {1, eta};
        case Kind::NegBin:
            // e^eta / (1 + a e^eta)^2
            return {1, param_ == 0.0 ? eta : eta - 2.0 * log1p_exp(std::log(param_) + eta)};
        case Kind::CensorTypeI:
            // t e^{-t}
            return {1, std::log(param_) + eta - param_ * std::exp(eta)};
        case Kind::CensorUniform: {
            const double t = param_ * std::exp(eta);
            const double v = uniform_censor_tdphi(t);
            // t phi'(t) ~ t/2 as t -> 0.
            return v > 0.0 ? SignedLog{1, std::log(v)} : SignedLog{1, std::log(param_) + eta - std::log(2.0)};
        }
        case Kind::CensorExp: {
            // r e^{-eta} / (1 + r e^{-eta})^2
            const double z = std::log(param_) - eta;
            return {1, z - 2.0 * log1p_exp(z)};
        }
    }
    return {};
}

SignedLog IntensityFamily::reciprocal_curvature_log(double eta) const {
    switch (kind_) {
        case Kind::Linear: return {};
        // 1/lambda = e^{-eta} (+ a), so the curvature is e^{-eta}.
        case Kind::Poisson:
        case Kind::NegBin: return {1, -eta};
        case Kind::CensorExp: return {1, std::log(param_) - eta};
        case Kind::CensorTypeI: {
            // t e^{-t} (2 t e^{-t} + m (t - 1)) / m^3 with m = 1 - e^{-t}
            const double t = param_ * std::exp(eta);
            const double m = -std::expm1(-t);
            const SignedLog inner = signed_log(2.0 * t * std::exp(-t) + m * (t - 1.0));
            if (inner.sign == 0) return {};
            return {inner.sign, std::log(t) - t + inner.log_abs - 3.0 * std::log(m)};
        }
        case Kind::CensorUniform: {
            // (2 lambda'^2 - lambda lambda'') / lambda^3 with lambda'' = -h(t)/t
            const double t = param_ * std::exp(eta);
            const double phi = uniform_censor_phi(t);
            const double g = uniform_censor_tdphi(t);
            const SignedLog num = signed_log(2.0 * g * g + phi * uniform_censor_h(t) / t);
            if (num.sign == 0) return {};
            return {num.sign, num.log_abs - 3.0 * std::log(phi)};
        }
    }
    return {};
}

void CanonicalProblem::validate() const {
    if (k < 1 || k > kMaxDimension) {
        throw std::invalid_argument("dimension k must be in [1, " + std::to_string(kMaxDimension) +
                                    "]");
    }
    if (!std::isfinite(beta0) || !std::isfinite(beta1)) {
        throw std::invalid_argument("beta0 and beta1 must be finite");
    }
    if (beta1 < 0.0) {
        throw std::invalid_argument("canonical slope beta1 must be >= 0");
    }
}

double q(const IntensityFamily& fam, const CanonicalProblem& prob, double x1) {
    check_unit_interval(x1);
    return fam.value(prob.beta0 + prob.beta1 * x1);
}

double q_prime(const IntensityFamily& fam, const CanonicalProblem& prob, double x1) {
    check_unit_interval(x1);
    return prob.beta1 * fam.derivative(prob.beta0 + prob.beta1 * x1);
}

double log_deriv_ratio(const IntensityFamily& fam, const CanonicalProblem& prob, double x1) {
    check_unit_interval(x1);
    return prob.beta1 * fam.log_slope(prob.beta0 + prob.beta1 * x1);
}

double u_second_derivative(const IntensityFamily& fam, const CanonicalProblem& prob, double x1) {
    check_unit_interval(x1);
    return prob.beta1 * prob.beta1 * fam.reciprocal_curvature_log(prob.beta0 + prob.beta1 * x1).value();
}

ConditionReport check_conditions(const IntensityFamily& fam, const CanonicalProblem& prob,
                                 int grid_n) {
    prob.validate();
    if (grid_n < 3) throw std::invalid_argument("grid_n must be >= 3");
    if (!(prob.beta1 > 0.0)) throw std::invalid_argument("conditions require beta1 > 0");

    ConditionReport report;
    report.grid_n = grid_n;
    auto fail = [](ConditionCheck& c, double x) {
        if (c.passed) {
            c.passed = false;
            c.first_violation = x;
        }
    };

    // u'' = beta1^2 (1/lambda)''(eta) with eta increasing in x1, so the curvature in eta has the
    // same monotonicity; the log form keeps saturated tails from collapsing to 0.
    std::vector<double> xs(grid_n), ratio(grid_n);
    std::vector<SignedLog> u2(grid_n);
    for (int i = 0; i < grid_n; ++i) {
        // Endpoints are pinned so that rounding never leaves [-1, 1].
        const double x = (i == grid_n - 1) ? 1.0 : -1.0 + 2.0 * i / (grid_n - 1);
        xs[i] = x;
        const double qv = q(fam, prob, x);
        if (!(qv > 0.0) || !std::isfinite(qv)) fail(report.positive, x);
        const double eta = prob.beta0 + prob.beta1 * x;
        if (fam.derivative_log(eta).sign <= 0) fail(report.increasing, x);
        u2[i] = fam.reciprocal_curvature_log(eta);
        ratio[i] = log_deriv_ratio(fam, prob, x);
    }

    const bool rising = u2[0] < u2[1];
    for (int i = 1; i < grid_n; ++i) {
        const bool ok = rising ? (u2[i - 1] < u2[i]) : (u2[i] < u2[i - 1]);
        const double la = u2[i].log_abs;
        if (!ok || std::isnan(la) || la == std::numeric_limits<double>::infinity()) {
            fail(report.u2_injective, xs[i]);
            break;
        }
    }

    for (int i = 1; i < grid_n; ++i) {
        // Rounding slack only; the closed forms are exactly monotone.
        const double slack = 1e-13 * std::max(1.0, std::abs(ratio[i - 1]));
        if (ratio[i] > ratio[i - 1] + slack) {
            fail(report.log_slope_monotone, xs[i]);
            break;
        }
    }
    return report;
}

}  // namespace balldesign
