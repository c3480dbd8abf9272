#include "oplab/bergman.hpp"

#include <cmath>
#include <numbers>

namespace oplab {

namespace {

void check_capacity(const TaylorPolynomial& f, const TaylorPolynomial& g,
                    const PairingConfig& cfg) {
    const std::size_t total = f.degree() + g.degree();
    if (cfg.rule.angular_count < total + 1) {
        throw AliasingError("bergman pairing: angular_count below deg f + deg g + 1");
    }
    // Radial rule integrates u^n exactly for n <= 2 * nodes - 1; monomial
    // pairs need n = (deg f + deg g)/2.
    if (total / 2 + 1 > 2 * cfg.rule.radial_nodes.size()) {
        throw AliasingError("bergman pairing: radial rule capacity exceeded");
    }
}

} // namespace

PairingConfig::PairingConfig(double alpha_, DiscRule rule_) : alpha(alpha_), rule(std::move(rule_)) {
    if (!(alpha > -1.0)) throw ConfigError("PairingConfig: alpha must exceed -1");
    if (rule.alpha != alpha) throw ConfigError("PairingConfig: rule.alpha must equal alpha");
}

PairingConfig PairingConfig::for_degree(double alpha, std::size_t max_degree) {
    const std::size_t angular = 2 * max_degree + 8;
    return PairingConfig(alpha, make_disc_rule(64, angular, alpha));
}

Complex bergman_pairing(const TaylorPolynomial& f, const TaylorPolynomial& g,
                        const PairingConfig& cfg) {
    check_capacity(f, g, cfg);
    return disc_integrate(f, g, cfg.rule);
}

double bergman_norm_p(const TaylorPolynomial& f, double p, const PairingConfig& cfg) {
    if (!(p >= 1.0)) throw ParamError("bergman_norm_p: p must be at least 1");
    const std::size_t M = cfg.rule.angular_count;
    if (M < 2 * f.degree() + 1) {
        throw AliasingError("bergman_norm_p: angular_count below 2 deg f + 1");
    }
    const double angular_weight = 2.0 * std::numbers::pi / static_cast<double>(M);
    double acc = 0.0;
    for (std::size_t ir = 0; ir < cfg.rule.radial_nodes.size(); ++ir) {
        const double r = cfg.rule.radial_nodes[ir];
        double ring = 0.0;
        for (std::size_t jt = 0; jt < M; ++jt) {
            const double theta =
                2.0 * std::numbers::pi * static_cast<double>(jt) / static_cast<double>(M);
            ring += std::pow(std::abs(evaluate(f, std::polar(r, theta))), p);
        }
        acc += cfg.rule.radial_weights[ir] * angular_weight * ring;
    }
    return std::pow(acc, 1.0 / p);
}

double adjoint_pairing_residual(const GroupParams& p, double t, const TaylorPolynomial& f,
                                const TaylorPolynomial& g, const PairingConfig& cfg) {
    const Complex lhs = bergman_pairing(g, apply_group(p, t, f), cfg);
    const Complex rhs = bergman_pairing(adjoint_apply(p, t, g), f, cfg);
    return std::abs(lhs - rhs);
}

double bergman_growth_ratio(const TaylorPolynomial& f, Complex z, double p,
                            const PairingConfig& cfg) {
    if (f.is_zero()) throw ParamError("bergman_growth_ratio: undefined for f = 0");
    const double az = std::abs(z);
    if (az >= 1.0) throw DomainError("bergman_growth_ratio: point outside the disc");
    const double gamma = (cfg.alpha + 2.0) / p;
    const double norm = bergman_norm_p(f, p, cfg);
    return std::abs(evaluate(f, z)) * std::pow(1.0 - az * az, gamma) / norm;
}

} // namespace oplab
