#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace balldesign {

/// Largest dimension accepted anywhere in the library.
inline constexpr int kMaxDimension = 64;

/// sign * exp(log_abs); sign is -1, 0 or +1 and log_abs is -inf when sign is 0.
struct SignedLog {
    int sign = 0;
    double log_abs = -std::numeric_limits<double>::infinity();

    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
    friend bool operator<(const SignedLog& a, const SignedLog& b) {
        if (a.sign != b.sign) return a.sign < b.sign;
        return a.sign > 0 ? a.log_abs < b.log_abs : a.log_abs > b.log_abs;
    }
};

/// Intensity (efficiency) function lambda of the linear predictor, as used in
/// the elemental information matrix lambda(f(x)'beta) f(x) f(x)'.
///
/// Construct through the named factories; they enforce the parameter
/// invariants (a >= 0, c > 0, censor_rate > 0).
class IntensityFamily {
public:
    enum class Kind { Linear, Poisson, NegBin, CensorTypeI, CensorUniform, CensorExp };

    static IntensityFamily linear();
    static IntensityFamily poisson();
    /// Negative binomial with Var = mu + a mu^2.
    static IntensityFamily negbin(double a);
    /// Proportional hazards, type I censoring at fixed time c.
    static IntensityFamily censor_type1(double c);
    /// Proportional hazards, censoring times uniform on [0, c].
    static IntensityFamily censor_uniform(double c);
    /// Proportional hazards, exponentially distributed censoring times.
    static IntensityFamily censor_exp(double censor_rate);

    /// Parses `poisson`, `negbin:a=<v>`, `censor-t1:c=<v>`, `censor-unif:c=<v>`,
    /// `censor-exp:rate=<v>` or `linear`. Throws std::invalid_argument.
    static IntensityFamily parse(std::string_view spec);

    Kind kind() const noexcept { return kind_; }
    /// a, c or censor_rate depending on kind; 0 for Linear and Poisson.
    double parameter() const noexcept { return param_; }

    /// Canonical string form, inverse of parse().
    std::string to_string() const;

    /// lambda(eta).
    double value(double eta) const;
    /// lambda'(eta).
    double derivative(double eta) const;
    /// lambda'(eta) / lambda(eta), evaluated without forming the quotient.
    double log_slope(double eta) const;
    /// lambda'(eta) in log form, exact in sign where the plain value underflows.
    SignedLog derivative_log(double eta) const;
    /// (1/lambda)''(eta) in log form.
    SignedLog reciprocal_curvature_log(double eta) const;

    friend bool operator==(const IntensityFamily&, const IntensityFamily&) = default;

private:
    IntensityFamily(Kind kind, double param) : kind_(kind), param_(param) {}

    Kind kind_;
    double param_;
};

/// Reduced problem after rotating beta onto the first axis:
/// beta = (beta0, beta1, 0, ..., 0) with beta1 >= 0.
struct CanonicalProblem {
    int k = 1;
    double beta0 = 0.0;
    double beta1 = 0.0;

    /// Throws std::invalid_argument unless 1 <= k <= kMaxDimension, beta1 >= 0
    /// and both betas are finite.
    void validate() const;
};

// Transforms along the canonical axis, q(x1) = lambda(beta0 + beta1 x1).
// All throw std::domain_error when x1 is outside [-1, 1].

double q(const IntensityFamily& fam, const CanonicalProblem& prob, double x1);
double q_prime(const IntensityFamily& fam, const CanonicalProblem& prob, double x1);
double log_deriv_ratio(const IntensityFamily& fam, const CanonicalProblem& prob, double x1);

/// u''(x1) for u = 1/q, from the analytic second derivative. Underflows to 0 where the
/// intensity saturates; check_conditions works on the log form instead.
double u_second_derivative(const IntensityFamily& fam, const CanonicalProblem& prob, double x1);

struct ConditionCheck {
    bool passed = true;
    /// Grid abscissa of the first sample that violates the condition.
    std::optional<double> first_violation;
};

/// Outcome of sampling conditions (A1)-(A4) on an even grid over [-1, 1].
struct ConditionReport {
    int grid_n = 0;
    ConditionCheck positive;            ///< (A1) q > 0
    ConditionCheck increasing;          ///< (A2) q' > 0
    ConditionCheck u2_injective;        ///< (A3) (1/q)'' strictly monotone
    ConditionCheck log_slope_monotone;  ///< (A4) q'/q non-increasing

    bool all_passed() const noexcept {
        return positive.passed && increasing.passed && u2_injective.passed &&
               log_slope_monotone.passed;
    }
    std::array<const ConditionCheck*, 4> checks() const noexcept {
        return {&positive, &increasing, &u2_injective, &log_slope_monotone};
    }
};

/// Requires grid_n >= 3 and prob.beta1 > 0 (std::invalid_argument otherwise).
ConditionReport check_conditions(const IntensityFamily& fam, const CanonicalProblem& prob,
                                 int grid_n);

}  // namespace balldesign
