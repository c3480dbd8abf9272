#pragma once

#include "oplab/disc_group.hpp"
#include "oplab/quadrature.hpp"
#include "oplab/taylor.hpp"

namespace oplab {

/// Weighted Bergman pairing configuration; rule.alpha must equal alpha.
struct PairingConfig {
    double alpha;
    DiscRule rule;

    PairingConfig(double alpha_, DiscRule rule_);

    /// Convenience constructor with default node counts sized for max_degree.
    static PairingConfig for_degree(double alpha, std::size_t max_degree);
};

/// <f, g> = integral_D f(z) conj(g(z)) dm_alpha. First slot holomorphic and
/// unconjugated (Little Bloch side), second slot conjugated (L^1_a side).
Complex bergman_pairing(const TaylorPolynomial& f, const TaylorPolynomial& g,
                        const PairingConfig& cfg);

/// (integral_D |f|^p dm_alpha)^{1/p}.
double bergman_norm_p(const TaylorPolynomial& f, double p, const PairingConfig& cfg);

/// |<g, T_t f> - <T_{-t} g, f>|.
double adjoint_pairing_residual(const GroupParams& p, double t, const TaylorPolynomial& f,
                                const TaylorPolynomial& g, const PairingConfig& cfg);

/// |f(z)| (1-|z|^2)^{(alpha+2)/p} / ||f||_p; diagnostic for the Bergman
/// growth condition (the constant K is not pinned, only boundedness).
double bergman_growth_ratio(const TaylorPolynomial& f, Complex z, double p,
                            const PairingConfig& cfg);

} // namespace oplab
