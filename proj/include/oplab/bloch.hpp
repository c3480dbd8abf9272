#pragma once

#include <cstddef>

#include "oplab/taylor.hpp"

namespace oplab {

/// Sampling grid for suprema over the unit disc. The angular resolution must
/// satisfy n_theta >= 4 * deg(f) for the polynomial under test; r_max < 1
/// because the weight (1 - |z|^2) pushes the supremum strictly inside.
struct BlochGrid {
    std::size_t n_theta = 64;
    std::size_t n_radial = 64;
    double r_max = 1.0 - 1e-6;

    static BlochGrid for_degree(std::size_t deg) {
        BlochGrid g;
        g.n_theta = std::max<std::size_t>(32, 4 * deg);
        return g;
    }
};

struct NormEstimate {
    double value = 0.0;
    Complex attained_at{0.0, 0.0};
    BlochGrid grid;
    // Conservative discretization bound: max first-difference of the
    // per-angle maxima over adjacent angular samples.
    double grid_error = 0.0;
};

/// sup over the disc of (1 - |z|^2) |f'(z)|, computed on the grid with nested
/// golden-section refinement (radial tolerance 1e-10). The value is a lower
/// bound of the true supremum.
NormEstimate bloch_seminorm(const TaylorPolynomial& f, const BlochGrid& grid);

/// |f(0)| + bloch_seminorm(f).
NormEstimate bloch_norm(const TaylorPolynomial& f, const BlochGrid& grid);

/// sup over sampled r <= |z| <= r_max of (1 - |z|^2) |f'(z)|; tends to 0 as
/// r -> 1 for polynomials.
double little_bloch_tail(const TaylorPolynomial& f, double r, const BlochGrid& grid);

/// (1 + (1/2) log((1+|z|)/(1-|z|))) * bloch_norm(f) - |f(z)|.
/// Nonnegative for every f and |z| < 1 up to the grid error of the norm.
double growth_bound_margin(const TaylorPolynomial& f, Complex z, const BlochGrid& grid);

} // namespace oplab
