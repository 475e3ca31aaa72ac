#include "balldesign/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "balldesign/construct.hpp"
#include "balldesign/design_io.hpp"
#include "balldesign/ellipsoid.hpp"
#include "balldesign/infomat.hpp"
#include "balldesign/intensity.hpp"
#include "balldesign/marginal.hpp"
#include "balldesign/verify.hpp"

namespace balldesign::cli {
namespace {

using nlohmann::json;

constexpr int kConditionGrid = 201;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::vector<T> out;
    std::string_view rest = text;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const auto item = rest.substr(0, comma);
        T v{};
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc{} || ptr != item.data() + item.size() || item.empty()) {
            throw UsageError(std::string("bad ") + what + " list '" + text + "'");
        }
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    if (out.empty()) throw UsageError(std::string("empty ") + what + " list");
    return out;
}

std::string num(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw UsageError("invalid JSON in '" + path + "': " + e.what());
    }
}

EllipsoidRegion parse_region(const std::string& spec, int k) {
    if (spec == "ball") return EllipsoidRegion::unit_ball(k);
    constexpr std::string_view prefix = "ellipsoid:";
    if (spec.rfind(prefix, 0) != 0) {
        throw UsageError("region must be 'ball' or 'ellipsoid:<path>'");
    }
    EllipsoidRegion r = region_from_json(read_json_file(spec.substr(prefix.size())));
    if (r.k() != k) throw UsageError("region dimension does not match --k");
    return r;
}

// Sends `text` to --out when given, otherwise to `out`.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(cfg.out_path);
    if (!file) throw UsageError("cannot write '" + cfg.out_path + "'");
    file << text;
}

FullParameter full_parameter(const RunConfig& cfg) {
    if (cfg.k < 1 || cfg.k > kMaxDimension) throw UsageError("--k out of range");
    if (static_cast<int>(cfg.beta.size()) != cfg.k + 1) {
        throw UsageError("--beta must list k+1 values (beta0 first)");
    }
    return FullParameter(Eigen::Map<const Eigen::VectorXd>(cfg.beta.data(), cfg.k + 1));
}

CertifyOptions certify_options(const RunConfig& cfg) {
    CertifyOptions opts;
    opts.grid_n = cfg.grid;
    opts.slack = cfg.slack;
    return opts;
}

void print_conditions(std::ostream& err, const ConditionReport& report) {
    static constexpr const char* names[] = {"A1 (q > 0)", "A2 (q' > 0)",
                                            "A3 ((1/q)'' injective)", "A4 (q'/q non-increasing)"};
    const auto checks = report.checks();
    for (std::size_t i = 0; i < checks.size(); ++i) {
        err << "  " << names[i] << ": " << (checks[i]->passed ? "ok" : "FAILED");
        if (checks[i]->first_violation) err << " at x1 = " << *checks[i]->first_violation;
        err << '\n';
    }
}

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
}

struct CurveRange {
    double lo, hi;
    int n;
};

CurveRange parse_curve_range(const std::string& text) {
    const auto a = text.find(':');
    const auto b = text.find(':', a == std::string::npos ? a : a + 1);
    if (a == std::string::npos || b == std::string::npos) {
        throw UsageError("--curve-range must be lo:hi:n");
    }
    const auto lo = parse_list<double>(text.substr(0, a), "curve-range");
    const auto hi = parse_list<double>(text.substr(a + 1, b - a - 1), "curve-range");
    const auto n = parse_list<int>(text.substr(b + 1), "curve-range");
    if (lo.size() != 1 || hi.size() != 1 || n.size() != 1) {
        throw UsageError("--curve-range must be lo:hi:n");
    }
    if (!(lo[0] >= 0.0) || !(hi[0] > lo[0]) || !std::isfinite(hi[0]) || n[0] < 2) {
        throw UsageError("--curve-range needs 0 <= lo < hi and n >= 2");
    }
    return {lo[0], hi[0], n[0]};
}

}  // namespace

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto fam = IntensityFamily::parse(cfg.model);
        const FullParameter beta = full_parameter(cfg);
        const EllipsoidRegion region = parse_region(cfg.region, cfg.k);
        const FullParameter ball_beta = pull_back_parameter(region, beta);
        const CanonicalProblem prob = canonical_problem(ball_beta);

        DesignRecord rec;
        rec.k = cfg.k;
        rec.model = fam.to_string();
        rec.beta = cfg.beta;

        Design ball_design;
        if (degenerate_design_flag(prob)) {
            ball_design = degenerate_design(cfg.k);
        } else {
            const ConditionReport report = check_conditions(fam, prob, kConditionGrid);
            if (!report.all_passed()) {
                err << "intensity conditions fail for " << rec.model << ":\n";
                print_conditions(err, report);
                if (!cfg.force) {
                    err << "rerun with --force to solve anyway\n";
                    return int(kConditionsFailed);
                }
            }
            const MarginalSolution sol = solve_x12(fam, prob, {.tol = cfg.tol});
            if (sol.ambiguous) {
                err << "warning: several local optima for x12; picked " << num(sol.x12)
                    << " by determinant\n";
            }
            rec.x12 = sol.x12;
            ball_design = oriented_design(ball_beta.slope() / prob.beta1, sol.x12);
        }
        rec.design = push_forward_design(region, ball_design);
        rec.certificate = certify_on_region(fam, beta, rec.design, region, certify_options(cfg));
        emit(cfg, out, to_json(rec).dump(2) + "\n");
        return int(rec.certificate->passed ? kOk : kCertificationFailed);
    });
}

int cmd_certify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (cfg.design_path.empty()) throw UsageError("certify needs --design <file>");
        const DesignRecord rec = design_record_from_json(read_json_file(cfg.design_path));
        RunConfig merged = cfg;
        if (merged.model.empty()) merged.model = rec.model;
        if (merged.k == 0) merged.k = rec.k;
        if (merged.beta.empty()) merged.beta = rec.beta;
        const auto fam = IntensityFamily::parse(merged.model);
        const FullParameter beta = full_parameter(merged);
        if (rec.design.dimension() != merged.k) throw UsageError("design dimension mismatch");
        const EllipsoidRegion region = parse_region(merged.region, merged.k);
        const Certificate cert =
            certify_on_region(fam, beta, rec.design, region, certify_options(merged));
        emit(cfg, out, to_json(cert).dump(2) + "\n");
        return int(cert.passed ? kOk : kCertificationFailed);
    });
}

int cmd_curve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto fam = IntensityFamily::parse(cfg.model);
        const CurveRange range = parse_curve_range(cfg.curve_range);
        if (cfg.ks.empty()) throw UsageError("curve needs --k");
        const std::string model = fam.to_string();

        std::ostringstream csv;
        csv << "model,k,beta1,beta1_transformed,x12\n";
        auto row = [&](const std::string& k, double b1, double x12) {
            csv << model << ',' << k << ',' << num(b1) << ',' << num(b1 / (1.0 + b1))
                << ',' << num(x12) << '\n';
        };
        auto beta1_at = [&](int i) {
            return i == range.n - 1 ? range.hi
                                    : range.lo + (range.hi - range.lo) * i / (range.n - 1);
        };
        for (int k : cfg.ks) {
            if (k < 1 || k > kMaxDimension) throw UsageError("--k out of range");
            for (int i = 0; i < range.n; ++i) {
                const double b1 = beta1_at(i);
                const double x12 = b1 == 0.0
                                       ? degenerate_marginal(k).x12
                                       : solve_x12(fam, {k, cfg.beta0, b1}, {.tol = cfg.tol}).x12;
                row(std::to_string(k), b1, x12);
            }
        }
        if (cfg.limit_curve) {
            for (int i = 0; i < range.n; ++i) {
                const double b1 = beta1_at(i);
                row("inf", b1, limit_x12(fam, cfg.beta0, b1, cfg.tol));
            }
        }
        emit(cfg, out, csv.str());
        return int(kOk);
    });
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const auto fam = IntensityFamily::parse(cfg.model);
        const CanonicalProblem prob = canonical_problem(full_parameter(cfg));
        const MarginalSolution sol = degenerate_design_flag(prob)
                                         ? degenerate_marginal(prob.k)
                                         : solve_x12(fam, prob, {.tol = cfg.tol});
        const MarginalOptimum bf = brute_force_marginal(fam, prob, cfg.oracle_grid, cfg.oracle_grid);

        // Grid arg-max of the optimally weighted log-determinant.
        const int n = cfg.logdet_grid;
        if (n < 10) throw UsageError("--logdet-grid must be >= 10");
        const double lo = prob.k == 1 ? -1.0 : -1.0 + 1.0 / n;
        const double hi = 1.0 - 1.0 / n;
        double scan_x = lo;
        double scan_best = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            const double x = lo + (hi - lo) * i / (n - 1);
            const double v = log_det_objective(fam, prob, x);
            if (v > scan_best) {
                scan_best = v;
                scan_x = x;
            }
        }

        json report = {
            {"model", fam.to_string()},
            {"k", prob.k},
            {"beta0", prob.beta0},
            {"beta1", prob.beta1},
            {"solver", {{"x11", sol.x11}, {"x12", sol.x12}, {"w11", sol.w11},
                        {"log_det", log_det_objective(fam, prob, sol.x12)},
                        {"method", std::string(to_string(sol.method))}}},
            {"brute_force", {{"x11", bf.x11}, {"x12", bf.x12}, {"w11", bf.w11},
                             {"log_det", bf.log_det},
                             {"x_step", bf.x_step}, {"w_step", bf.w_step}}},
            {"logdet_scan", {{"x12", scan_x}, {"step", (hi - lo) / (n - 1)}}},
            {"discrepancy", {{"x11", std::abs(bf.x11 - sol.x11)},
                             {"x12", std::abs(bf.x12 - sol.x12)},
                             {"w11", std::abs(bf.w11 - sol.w11)},
                             {"logdet_scan_x12", std::abs(scan_x - sol.x12)}}}};
        emit(cfg, out, report.dump(2) + "\n");
        return int(kOk);
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Locally D-optimal designs for intensity regression models on the k-ball"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string beta_text, k_text;

    auto add_model = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--model", cfg.model,
                                    "poisson | negbin:a=A | censor-t1:c=C | censor-unif:c=C | "
                                    "censor-exp:rate=R | linear");
        if (required) opt->required();
    };
    auto add_problem = [&](CLI::App* sub, bool required) {
        add_model(sub, required);
        auto* k = sub->add_option("--k", cfg.k, "dimension of the design ball");
        auto* b = sub->add_option("--beta", beta_text, "beta0,beta1,...,betak");
        if (required) {
            k->required();
            b->required();
        }
        sub->add_option("--tol", cfg.tol, "root-finder tolerance")->capture_default_str();
    };
    auto add_certify = [&](CLI::App* sub) {
        sub->add_option("--grid", cfg.grid, "certification grid size")->capture_default_str();
        sub->add_option("--slack", cfg.slack, "certification slack")->capture_default_str();
        sub->add_option("--region", cfg.region, "ball | ellipsoid:<file.json>")
            ->capture_default_str();
    };

    auto* solve = app.add_subcommand("solve", "compute, certify and print an optimal design");
    add_problem(solve, true);
    add_certify(solve);
    solve->add_option("--out", cfg.out_path, "write JSON here instead of stdout");
    solve->add_flag("--force", cfg.force, "solve even when (A1)-(A4) fail");

    auto* certify = app.add_subcommand("certify", "check a design JSON against the bound k+1");
    add_problem(certify, false);
    add_certify(certify);
    certify->add_option("--design", cfg.design_path, "design JSON file")->required();
    certify->add_option("--out", cfg.out_path, "write JSON here instead of stdout");

    auto* curve = app.add_subcommand("curve", "x12 as a function of beta1, as CSV");
    add_model(curve, true);
    curve->add_option("--k", k_text, "comma-separated dimensions")->required();
    curve->add_option("--beta0", cfg.beta0, "intercept")->capture_default_str();
    curve->add_option("--curve-range", cfg.curve_range, "lo:hi:n over beta1")
        ->capture_default_str();
    curve->add_flag("--limit-curve", cfg.limit_curve, "append the k -> infinity curve");
    curve->add_option("--tol", cfg.tol, "root-finder tolerance")->capture_default_str();
    curve->add_option("--out", cfg.out_path, "write CSV here instead of stdout");

    auto* oracle = app.add_subcommand("oracle", "compare the solver with brute-force optima");
    add_problem(oracle, true);
    oracle->add_option("--oracle-grid", cfg.oracle_grid, "brute-force grid per axis")
        ->capture_default_str();
    oracle->add_option("--logdet-grid", cfg.logdet_grid, "log-det scan points")
        ->capture_default_str();
    oracle->add_option("--out", cfg.out_path, "write JSON here instead of stdout");

    try {
        app.parse(argc, argv);
        if (!beta_text.empty()) cfg.beta = parse_list<double>(beta_text, "beta");
        if (!k_text.empty()) cfg.ks = parse_list<int>(k_text, "k");
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? int(kOk) : int(kUsage);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    if (solve->parsed()) return cmd_solve(cfg, out, err);
    if (certify->parsed()) return cmd_certify(cfg, out, err);
    if (curve->parsed()) return cmd_curve(cfg, out, err);
    return cmd_oracle(cfg, out, err);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv{"balldesign"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace balldesign::cli
