#include "oplab/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oplab/errors.hpp"

namespace oplab {

namespace {

constexpr double kRadialTol = 1e-10;
constexpr double kAngularTol = 1e-9;
constexpr double kGolden = 0.6180339887498949;

void validate_grid(const BlochGrid& grid, std::size_t deg) {
    if (grid.n_theta == 0 || grid.n_radial == 0) {
        throw ConfigError("BlochGrid: empty grid");
    }
    if (!(grid.r_max > 0.0) || !(grid.r_max < 1.0)) {
        throw ConfigError("BlochGrid: r_max must lie in (0, 1)");
    }
    if (deg > 0 && grid.n_theta < 4 * deg) {
        throw ConfigError("BlochGrid: n_theta below 4 * degree");
    }
}

// (1 - r^2) |f'(r e^{i theta})| for a precomputed derivative df.
double objective(const TaylorPolynomial& df, double theta, double r) {
    const Complex z = std::polar(r, theta);
    return (1.0 - r * r) * std::abs(evaluate(df, z));
}

// Best radius for a fixed angle: coarse scan over [r_lo, r_hi] followed by
// golden-section polish on the bracketing interval.
double radial_max(const TaylorPolynomial& df, double theta, double r_lo, double r_hi,
                  std::size_t n_radial, double* attained_r = nullptr) {
    double best = -1.0;
    std::size_t best_j = 0;
    const std::size_t n = std::max<std::size_t>(n_radial, 2);
    for (std::size_t j = 0; j < n; ++j) {
        const double r = r_lo + (r_hi - r_lo) * static_cast<double>(j) /
                                    static_cast<double>(n - 1);
        const double v = objective(df, theta, r);
        if (v > best) {
            best = v;
            best_j = j;
        }
    }
    const double step = (r_hi - r_lo) / static_cast<double>(n - 1);
    double a = std::max(r_lo, r_lo + step * (static_cast<double>(best_j) - 1.0));
    double b = std::min(r_hi, r_lo + step * (static_cast<double>(best_j) + 1.0));

    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = objective(df, theta, x1);
    double f2 = objective(df, theta, x2);
    while (b - a > kRadialTol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = objective(df, theta, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = objective(df, theta, x1);
        }
    }
    const double r_best = 0.5 * (a + b);
    const double v_best = std::max({best, objective(df, theta, r_best), f1, f2});
    if (attained_r) {
        *attained_r = r_best;
        if (best > objective(df, theta, r_best)) {
            *attained_r = r_lo + step * static_cast<double>(best_j);
        }
    }
    return v_best;
}

struct SupResult {
    double value = 0.0;
    Complex attained{0.0, 0.0};
    double grid_error = 0.0;
};

// Supremum of the weighted derivative over r in [r_lo, r_hi]. Coarse
// angular x radial scan, then nested golden-section refinement around the
// leading angular peaks. Refining more than one peak guards against the
// coarse grid ranking two near-tied local maxima in the wrong order.
SupResult weighted_derivative_sup(const TaylorPolynomial& f, const BlochGrid& grid, double r_lo,
                                  double r_hi) {
    validate_grid(grid, f.degree());
    SupResult out;
    const TaylorPolynomial df = differentiate(f);
    if (df.is_zero()) {
        out.attained = std::polar(r_lo, 0.0);
        out.value = 0.0;
        return out;
    }

    const std::size_t nt = grid.n_theta;
    const double dtheta = 2.0 * std::numbers::pi / static_cast<double>(nt);
    std::vector<double> per_angle(nt);
    std::vector<double> per_angle_r(nt);
    for (std::size_t i = 0; i < nt; ++i) {
        per_angle[i] = radial_max(df, dtheta * static_cast<double>(i), r_lo, r_hi, grid.n_radial,
                                  &per_angle_r[i]);
    }

    for (std::size_t i = 0; i < nt; ++i) {
        out.grid_error = std::max(out.grid_error,
                                  std::fabs(per_angle[(i + 1) % nt] - per_angle[i]));
    }

    // Indices of the strongest local peaks of the per-angle maxima.
    std::vector<std::size_t> order(nt);
    for (std::size_t i = 0; i < nt; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return per_angle[a] > per_angle[b]; });
    std::vector<std::size_t> peaks;
    for (std::size_t idx : order) {
        bool near_existing = false;
        for (std::size_t p : peaks) {
            const std::size_t diff = (idx + nt - p) % nt;
            if (diff <= 1 || diff >= nt - 1) near_existing = true;
        }
        if (!near_existing) peaks.push_back(idx);
        if (peaks.size() == 3) break;
    }

    out.value = per_angle[order[0]];
    out.attained = std::polar(per_angle_r[order[0]], dtheta * static_cast<double>(order[0]));

    for (std::size_t p : peaks) {
        const double theta_c = dtheta * static_cast<double>(p);
        double a = theta_c - dtheta;
        double b = theta_c + dtheta;
        const auto eval_angle = [&](double th) {
            return radial_max(df, th, r_lo, r_hi, grid.n_radial);
        };
        double x1 = b - kGolden * (b - a);
        double x2 = a + kGolden * (b - a);
        double f1 = eval_angle(x1);
        double f2 = eval_angle(x2);
        while (b - a > kAngularTol) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + kGolden * (b - a);
                f2 = eval_angle(x2);
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - kGolden * (b - a);
                f1 = eval_angle(x1);
            }
        }
        const double theta_best = 0.5 * (a + b);
        double r_best = 0.0;
        const double v = radial_max(df, theta_best, r_lo, r_hi, grid.n_radial, &r_best);
        if (v > out.value) {
            out.value = v;
            out.attained = std::polar(r_best, theta_best);
        }
    }
    return out;
}

} // namespace

NormEstimate bloch_seminorm(const TaylorPolynomial& f, const BlochGrid& grid) {
    const SupResult s = weighted_derivative_sup(f, grid, 0.0, grid.r_max);
    NormEstimate est;
    est.value = s.value;
    est.attained_at = s.attained;
    est.grid = grid;
    est.grid_error = s.grid_error;
    return est;
}

NormEstimate bloch_norm(const TaylorPolynomial& f, const BlochGrid& grid) {
    NormEstimate est = bloch_seminorm(f, grid);
    est.value += std::abs(f.coeff(0));
    return est;
}

double little_bloch_tail(const TaylorPolynomial& f, double r, const BlochGrid& grid) {
    if (!(r > 0.0) || r >= grid.r_max) {
        throw ConfigError("little_bloch_tail: need 0 < r < r_max");
    }
    return weighted_derivative_sup(f, grid, r, grid.r_max).value;
}

double growth_bound_margin(const TaylorPolynomial& f, Complex z, const BlochGrid& grid) {
    const double az = std::abs(z);
    if (az >= 1.0) throw DomainError("growth_bound_margin: point outside the disc");
    const double factor = 1.0 + 0.5 * std::log((1.0 + az) / (1.0 - az));
    return factor * bloch_norm(f, grid).value - std::abs(evaluate(f, z));
}

} // namespace oplab
