#pragma once

#include <cstddef>
#include <vector>

#include "oplab/taylor.hpp"

namespace oplab {

/**
 * Gauss-Jacobi rule on (0,1) with the weight t^beta absorbed:
 *   integral_0^1 t^beta g(t) dt  ~=  sum_i weights[i] * g(nodes[i]),
 * exact for polynomials g of degree <= 2 * size() - 1. Kernels t^a with
 * complex a keep the unimodular factor t^{i Im a} in the integrand.
 */
struct IntervalRule {
    std::vector<double> nodes;    // in (0,1), increasing
    std::vector<double> weights;  // positive
    double jacobi_exponent = 0.0; // beta > -1

    std::size_t size() const { return nodes.size(); }
};

IntervalRule make_interval_rule(std::size_t n, double beta);

/**
 * integral_0^1 t^a h(tz) dt with Re a = rule.jacobi_exponent > -1.
 *
 * The polynomial head of h (first slots, fixed order) is integrated by the
 * closed-form moments 1/(a+j+1); the remainder, which vanishes to that order
 * at t = 0, is sampled at the rule nodes with the oscillatory factor
 * t^{i Im a} in the integrand (classical singularity subtraction; plain
 * sampling of t^{i Im a} loses ~5 digits to the endpoint oscillation).
 * For a monomial h = z^k the result matches z^k/(a+k+1) to ~1e-12 relative.
 */
Complex ray_integrate(const TaylorPolynomial& h, Complex z, Complex a, const IntervalRule& rule);

/**
 * Polar rule for integral_D phi dm_alpha, dm_alpha = (1-|z|^2)^alpha dA:
 * Gauss-Jacobi radial nodes (weight (1-r^2)^alpha r dr absorbed) times
 * angular_count equally spaced angles with weight 2*pi/angular_count.
 * The angular grid is rotation invariant.
 */
struct DiscRule {
    std::vector<double> radial_nodes;
    std::vector<double> radial_weights;
    std::size_t angular_count = 0;
    double alpha = 0.0;
};

DiscRule make_disc_rule(std::size_t n_radial, std::size_t angular_count, double alpha);

/// <f, g> = integral_D f(z) conj(g(z)) dm_alpha. Exact (to roundoff) for
/// polynomial pairs when angular_count >= deg f + deg g + 1 and the radial
/// rule has capacity for the combined degree.
Complex disc_integrate(const TaylorPolynomial& f, const TaylorPolynomial& g, const DiscRule& rule);

} // namespace oplab
