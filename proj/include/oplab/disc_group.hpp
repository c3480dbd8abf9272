#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "oplab/bloch.hpp"
#include "oplab/quadrature.hpp"
#include "oplab/taylor.hpp"

namespace oplab {

/// Parameters of the rotation group T_t f(z) = e^{ict} f(e^{ikt} z).
struct GroupParams {
    double c = 0.0;
    double k = 1.0; // k != 0

    GroupParams() = default;
    GroupParams(double c_, double k_) : c(c_), k(k_) {
        if (k == 0.0) throw ConfigError("GroupParams: k must be nonzero");
    }
};

/// Generator eigenvalue i(c + kn) attached to the monomial z^n.
Complex generator_eigenvalue(const GroupParams& p, std::size_t n);

/// T_t acting on coefficients: coeffs[n] *= e^{i(c+kn)t}.
TaylorPolynomial apply_group(const GroupParams& p, double t, const TaylorPolynomial& f);

/// Generator: coeffs[n] *= i(c+kn); equals i(c f + k z f').
TaylorPolynomial apply_generator(const GroupParams& p, const TaylorPolynomial& f);

/// Affine reduction to the base group (c,k) = (0,1):
/// mu in rho(Gamma_{c,k}) iff lambda = (mu - ic)/k in rho(Gamma_{0,1}), and
/// R(mu, Gamma_{c,k}) = (1/k) R(lambda, Gamma_{0,1}).
struct BaseReduction {
    Complex lambda;
    double scale;
};

BaseReduction reduce_to_base(const GroupParams& p, Complex mu);

/// Machine-precision guard against division blow-up at the point spectrum.
inline constexpr double kDefaultEigenvalueGuard = 1e-12;

/// Exact diagonal resolvent: coeffs[n] /= (mu - i(c+kn)). Throws
/// SpectrumError if mu is within the guard distance of an eigenvalue carried
/// by a nonzero coefficient; identically zero slots are skipped.
TaylorPolynomial resolvent_diagonal(const GroupParams& p, Complex mu, const TaylorPolynomial& f,
                                    double eigenvalue_guard = kDefaultEigenvalueGuard);

/// Integral resolvent (i/k) z^m integral_0^1 t^{m+i*lambda-1} (Q^m h)(tz) dt
/// for h in ran(M_z^m), m > Im(lambda), lambda = (mu-ic)/k. The rule must
/// carry jacobi_exponent = m - Im(lambda) - 1. Agrees with
/// resolvent_diagonal to ~1e-12 relative per coefficient.
TaylorPolynomial resolvent_integral(const GroupParams& p, Complex mu, const TaylorPolynomial& h,
                                    std::size_t m, const IntervalRule& rule,
                                    double eigenvalue_guard = kDefaultEigenvalueGuard);

/// Truncation C_r of the integral resolvent to [0, r]; converges to it in
/// Bloch norm as r -> 1 at rate (1 - r^{m - Im lambda}).
TaylorPolynomial truncated_resolvent_cr(const GroupParams& p, Complex mu,
                                        const TaylorPolynomial& h, std::size_t m, double r,
                                        const IntervalRule& rule,
                                        double eigenvalue_guard = kDefaultEigenvalueGuard);

/// Adjoint group on the predual: T*_t = T_{-t}.
TaylorPolynomial adjoint_apply(const GroupParams& p, double t, const TaylorPolynomial& g);

/// Point spectrum {i(c+kn) : 0 <= n <= N} with eigenfunctions z^n.
struct SpectrumReport {
    std::vector<Complex> eigenvalues;
    std::vector<std::size_t> eigenfunction_index;
    std::size_t truncation = 0;
};

SpectrumReport spectrum(const GroupParams& p, std::size_t N);

/// Resolvent eigenvalue points 1/(mu - i(c+kn)) together with the circle
/// |w - 1/(2 Re mu)| = 1/(2 |Re mu|) they all lie on.
struct ResolventSpectrumReport {
    Complex mu;
    std::vector<Complex> points;
    Complex circle_center;
    double circle_radius = 0.0;
};

ResolventSpectrumReport resolvent_spectrum(const GroupParams& p, Complex mu, std::size_t N,
                                           double eigenvalue_guard = kDefaultEigenvalueGuard);

/// Two-sided numerical certificate for ||R(mu)||: lower = best eigenvector
/// ratio and best Bloch-norm ratio over seeded random polynomials; upper =
/// 1/|Re mu| (isometry group resolvent bound).
struct NormBounds {
    double lower = 0.0;
    double upper = 0.0;
};

NormBounds resolvent_norm_bounds(const GroupParams& p, Complex mu, std::size_t sample_count,
                                 const BlochGrid& grid, std::uint64_t seed = 0x5eedu);

} // namespace oplab
