#include <complex>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oplab/bergman.hpp"
#include "oplab/bloch.hpp"
#include "oplab/disc_group.hpp"
#include "oplab/report.hpp"
#include "oplab/suite.hpp"

namespace {

using oplab::Complex;

// Coefficient lists are passed as whitespace-separated entries, each either
// a real ("1.5") or a complex ("1.5-0.25i").
Complex parse_complex_entry(const std::string& tok) {
    if (tok.empty()) throw oplab::ConfigError("empty coefficient entry");
    if (tok.back() != 'i') return Complex{std::stod(tok), 0.0};
    std::string body = tok.substr(0, tok.size() - 1);
    // Split at the last +/- that is not an exponent sign or leading sign.
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        const char ch = body[i];
        if ((ch == '+' || ch == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) return Complex{0.0, std::stod(body)};
    const double re = std::stod(body.substr(0, split));
    std::string im_part = body.substr(split);
    if (im_part == "+") im_part = "1";
    if (im_part == "-") im_part = "-1";
    return Complex{re, std::stod(im_part)};
}

std::vector<Complex> parse_coeffs(const std::string& text) {
    std::vector<Complex> out;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) out.push_back(parse_complex_entry(tok));
    if (out.empty()) throw oplab::ConfigError("coefficient list is empty");
    return out;
}

Complex parse_pair(const std::string& text) {
    const std::size_t comma = text.find(',');
    if (comma == std::string::npos) return Complex{std::stod(text), 0.0};
    return Complex{std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
}

void print_poly(const oplab::TaylorPolynomial& f) {
    for (std::size_t n = 0; n <= f.degree(); ++n) {
        std::printf("  z^%-3zu  % .17g  % .17g\n", n, f.coeff(n).real(), f.coeff(n).imag());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"oplab: numerical laboratory for weighted composition groups on the disc"};
    app.require_subcommand(1);

    // verify
    auto* verify = app.add_subcommand("verify", "run the property suite and emit a JSON report");
    std::string config_path;
    std::string report_path;
    std::uint64_t seed_override = 0;
    bool seed_given = false;
    bool print_config = false;
    verify->add_option("--config", config_path, "suite configuration JSON file");
    verify->add_option("--out", report_path, "report output path");
    verify->add_option("--seed", seed_override, "seed override")->each([&](const std::string&) {
        seed_given = true;
    });
    verify->add_flag("--print-config", print_config,
                     "print the effective configuration JSON and exit");

    // spectrum
    auto* spectrum_cmd = app.add_subcommand("spectrum", "emit eigenvalue/resolvent-circle CSV");
    double sc = 0.0, sk = 1.0;
    std::string mu_text = "1,0";
    std::size_t n_max = 16;
    std::string csv_path = "spectrum.csv";
    spectrum_cmd->add_option("--c", sc, "phase rate c");
    spectrum_cmd->add_option("--k", sk, "rotation rate k (nonzero)");
    spectrum_cmd->add_option("--mu", mu_text, "resolvent parameter re,im");
    spectrum_cmd->add_option("--n", n_max, "largest eigenvalue index");
    spectrum_cmd->add_option("--out", csv_path, "CSV output path");

    // resolve
    auto* resolve = app.add_subcommand("resolve", "apply the resolvent to a polynomial");
    double rc = 0.0, rk = 1.0;
    std::string rmu_text = "1,0";
    std::string coeff_text;
    std::string method = "diagonal";
    std::size_t m_override = 0;
    resolve->add_option("--c", rc, "phase rate c");
    resolve->add_option("--k", rk, "rotation rate k (nonzero)");
    resolve->add_option("--mu", rmu_text, "resolvent parameter re,im");
    resolve->add_option("--coeffs", coeff_text, "coefficients, e.g. \"0 1 0.5-0.25i\"")
        ->required();
    resolve->add_option("--method", method, "diagonal or integral")
        ->check(CLI::IsMember({"diagonal", "integral"}));
    resolve->add_option("--m", m_override, "vanishing order for the integral form");

    // norms
    auto* norms = app.add_subcommand("norms", "Bloch and Bergman norms of a polynomial");
    std::string ncoeff_text;
    double alpha = 0.0;
    double pexp = 2.0;
    norms->add_option("--coeffs", ncoeff_text, "coefficients")->required();
    norms->add_option("--alpha", alpha, "Bergman weight exponent (> -1)");
    norms->add_option("--p", pexp, "Bergman integrability exponent (>= 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*verify) {
            oplab::SuiteConfig cfg = config_path.empty()
                                         ? oplab::SuiteConfig::defaults()
                                         : oplab::SuiteConfig::from_json_file(config_path);
            if (seed_given) cfg.seed = seed_override;
            cfg.validate();
            if (print_config) {
                std::printf("%s\n", cfg.to_json().c_str());
                return 0;
            }
            const oplab::VerificationReport rep = oplab::run_suite(cfg);
            oplab::print_report(rep);
            if (!report_path.empty()) {
                oplab::emit_report_json(rep, report_path);
                std::printf("report written to %s\n", report_path.c_str());
            }
            return rep.all_pass() ? 0 : 1;
        }

        if (*spectrum_cmd) {
            const oplab::GroupParams p(sc, sk);
            oplab::emit_spectrum_csv(p, parse_pair(mu_text), n_max, csv_path);
            std::printf("spectrum written to %s\n", csv_path.c_str());
            return 0;
        }

        if (*resolve) {
            const oplab::GroupParams p(rc, rk);
            const Complex mu = parse_pair(rmu_text);
            const oplab::TaylorPolynomial h{parse_coeffs(coeff_text)};
            oplab::TaylorPolynomial out;
            if (method == "diagonal") {
                out = oplab::resolvent_diagonal(p, mu, h);
            } else {
                std::size_t m = m_override > 0 ? m_override : oplab::leading_zero_count(h);
                if (m == 0) {
                    std::fprintf(stderr,
                                 "integral form needs h in ran(M_z^m); pass leading zero "
                                 "coefficients or --m\n");
                    return 2;
                }
                const Complex lambda = oplab::reduce_to_base(p, mu).lambda;
                const double beta = static_cast<double>(m) - lambda.imag() - 1.0;
                if (!(beta > -1.0)) {
                    std::fprintf(stderr, "need m > Im((mu-ic)/k); increase --m\n");
                    return 2;
                }
                out = oplab::resolvent_integral(p, mu, h, m, oplab::make_interval_rule(64, beta));
            }
            std::printf("R(mu) h coefficients (re, im):\n");
            print_poly(out);
            return 0;
        }

        if (*norms) {
            const oplab::TaylorPolynomial f{parse_coeffs(ncoeff_text)};
            const oplab::BlochGrid grid = oplab::BlochGrid::for_degree(f.degree());
            const oplab::NormEstimate semi = oplab::bloch_seminorm(f, grid);
            const oplab::NormEstimate full = oplab::bloch_norm(f, grid);
            const oplab::PairingConfig pc = oplab::PairingConfig::for_degree(alpha, f.degree());
            std::printf("bloch seminorm      %.17g (attained near %g%+gi)\n", semi.value,
                        semi.attained_at.real(), semi.attained_at.imag());
            std::printf("bloch norm          %.17g\n", full.value);
            std::printf("bergman p-norm      %.17g (alpha=%g, p=%g)\n",
                        oplab::bergman_norm_p(f, pexp, pc), alpha, pexp);
            return 0;
        }
    } catch (const oplab::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const oplab::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
