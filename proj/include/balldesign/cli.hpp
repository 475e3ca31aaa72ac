#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace balldesign::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kConditionsFailed = 2,
    kCertificationFailed = 3,
};

struct RunConfig {
    std::string subcommand;
    std::string model;
    int k = 0;
    std::vector<int> ks;      ///< curve: dimensions to sweep
    std::vector<double> beta; ///< (beta0, beta1, ..., betak)
    double beta0 = 0.0;       ///< curve: intercept
    double tol = 1e-12;
    int grid = 200000;
    double slack = 1e-6;
    std::string region = "ball";
    std::string out_path;
    bool force = false;
    std::string curve_range = "0:10:101";
    bool limit_curve = false;
    std::string design_path;  ///< certify: candidate design JSON
    int oracle_grid = 400;
    int logdet_grid = 100000;
};

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_certify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_curve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv (program name first) and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same, for arguments without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace balldesign::cli
