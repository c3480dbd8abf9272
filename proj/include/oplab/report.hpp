#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "oplab/disc_group.hpp"

namespace oplab {

struct CheckRecord {
    std::string check_name;
    std::string inputs;
    double measured_value = 0.0;
    double bound = 0.0;
    bool pass = false;
    double runtime_ms = 0.0; // console diagnostics only; not serialized
};

struct VerificationReport {
    std::uint64_t seed = 0;
    std::vector<CheckRecord> checks;
    std::vector<std::string> paper_flags;

    std::size_t total() const { return checks.size(); }
    std::size_t passed() const;
    std::size_t failed() const { return total() - passed(); }
    bool all_pass() const { return failed() == 0; }
};

/// The three documented discrepancy notes carried by every report.
std::vector<std::string> standard_paper_flags();

/// Stable-key-order UTF-8 JSON. Timing fields are deliberately omitted so
/// that reports for a fixed seed are byte identical across runs.
void emit_report_json(const VerificationReport& r, const std::string& path);

/// CSV with header n,eig_re,eig_im,res_re,res_im,circle_dist; one row per
/// eigenvalue i(c+kn), resolvent point 1/(mu - i(c+kn)) and its distance to
/// the spectral circle.
void emit_spectrum_csv(const GroupParams& p, Complex mu, std::size_t N, const std::string& path);

/// Console table, one line per record plus a summary line.
void print_report(const VerificationReport& r);

} // namespace oplab
