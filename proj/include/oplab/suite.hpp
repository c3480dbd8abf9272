#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "oplab/report.hpp"

namespace oplab {

/// Parameter grids and tolerances for a verification run. A fixed seed makes
/// the whole report a pure function of (config, build).
struct SuiteConfig {
    std::vector<std::pair<double, double>> params_grid; // (c, k), k != 0
    std::vector<Complex> mu_grid;
    std::vector<double> gamma_grid;
    std::vector<double> alpha_grid;
    std::size_t degree_max = 12;
    std::uint64_t seed = 20240817;
    std::map<std::string, double> tolerances; // grid_tol, oracle_tol, residual_tol, branch_window

    static SuiteConfig defaults();

    /// Throws ConfigError on k = 0, alpha <= -1, non-positive tolerance, ...
    void validate() const;

    static SuiteConfig from_json_file(const std::string& path);
    std::string to_json() const;
};

/// Runs every module invariant over the configured grids. Errors inside a
/// check are caught and recorded as failures; the suite never aborts.
VerificationReport run_suite(const SuiteConfig& cfg);

} // namespace oplab
