#include "oplab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace oplab {

std::size_t VerificationReport::passed() const {
    std::size_t n = 0;
    for (const CheckRecord& c : checks) {
        if (c.pass) ++n;
    }
    return n;
}

std::vector<std::string> standard_paper_flags() {
    return {
        "factor-2 circle radius: the stated norm 1/(2|Re mu|) disagrees with the resolvent "
        "circle through the origin (center 1/(2 Re mu), radius 1/(2|Re mu|)), whose top "
        "modulus is 1/|Re mu|; the two-sided certificate uses 1/|Re mu| as the upper bound",
        "resolvent first form: the prefactor is printed as z^(-lambda t), dimensionally "
        "inconsistent with the substituted kernel; the implementation uses the substituted "
        "form z^m int_0^1 t^(m+i lambda-1) (Q^m h)(tz) dt, which is branch free on ran(M_z^m)",
        "half-plane generator domain mixes disc and half-plane variables; Delta is realized "
        "on half-plane evaluators and cross-checked through the disc model by conjugation",
    };
}

void emit_report_json(const VerificationReport& r, const std::string& path) {
    nlohmann::ordered_json j;
    j["schema"] = "oplab-report-v1";
    j["seed"] = r.seed;
    j["summary"] = {{"total", r.total()}, {"passed", r.passed()}, {"failed", r.failed()}};
    j["paper_flags"] = r.paper_flags;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const CheckRecord& c : r.checks) {
        nlohmann::ordered_json rec;
        rec["check_name"] = c.check_name;
        rec["inputs"] = c.inputs;
        rec["measured_value"] = c.measured_value;
        rec["bound"] = c.bound;
        rec["pass"] = c.pass;
        checks.push_back(std::move(rec));
    }
    j["checks"] = std::move(checks);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit_report_json: cannot open " + path);
    out << j.dump(2) << '\n';
    if (!out) throw IoError("emit_report_json: write failed for " + path);
}

void emit_spectrum_csv(const GroupParams& p, Complex mu, std::size_t N, const std::string& path) {
    if (mu.real() == 0.0) throw DomainError("emit_spectrum_csv: Re mu must be nonzero");
    const ResolventSpectrumReport rep = resolvent_spectrum(p, mu, N);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit_spectrum_csv: cannot open " + path);
    out << "n,eig_re,eig_im,res_re,res_im,circle_dist\n";
    char line[256];
    for (std::size_t n = 0; n <= N; ++n) {
        const Complex eig = generator_eigenvalue(p, n);
        const Complex res = rep.points[n];
        const double dist = std::fabs(std::abs(res - rep.circle_center) - rep.circle_radius);
        std::snprintf(line, sizeof(line), "%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", n, eig.real(),
                      eig.imag(), res.real(), res.imag(), dist);
        out << line;
    }
    if (!out) throw IoError("emit_spectrum_csv: write failed for " + path);
}

void print_report(const VerificationReport& r) {
    for (const CheckRecord& c : r.checks) {
        std::printf("%s %-44s measured=%-12.4g bound=%-10.4g %7.1fms  %s\n",
                    c.pass ? "[PASS]" : "[FAIL]", c.check_name.c_str(), c.measured_value, c.bound,
                    c.runtime_ms, c.inputs.c_str());
    }
    std::printf("summary: %zu checks, %zu passed, %zu failed\n", r.total(), r.passed(),
                r.failed());
}

} // namespace oplab
