#pragma once

#include <cstddef>
#include <functional>

#include "oplab/quadrature.hpp"
#include "oplab/taylor.hpp"

namespace oplab {

/// Normalized real Moebius map z -> (az+b)/(cz+d), ad - bc = 1.
struct MobiusMap {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static MobiusMap identity() { return {}; }

    /// The half-plane automorphism phi_t(z) = (z cos t - sin t)/(z sin t + cos t).
    static MobiusMap rotation(double t);

    /// Matrix product; rotation(s).compose(rotation(t)) == rotation(s+t).
    MobiusMap compose(const MobiusMap& other) const;
};

Complex mobius_apply(const MobiusMap& m, Complex z);

/// (az+b)/(cz+d) has derivative (ad-bc)/(cz+d)^2 = 1/(cz+d)^2.
Complex mobius_derivative(const MobiusMap& m, Complex z);

/// Cayley transform psi(z) = i(1+z)/(1-z), disc onto upper half-plane.
Complex cayley(Complex z);
/// psi^{-1}(w) = (w-i)/(w+i).
Complex cayley_inv(Complex w);

/// |phi_t(z) - psi(e^{-2it} psi^{-1}(z))|; zero up to roundoff on the
/// upper half-plane away from the poles.
double conjugation_identity_residual(double t, Complex z);

/// Principal power with a guard: throws BranchError when the base is within
/// 1e-10 of the cut (-inf, 0].
Complex principal_pow(Complex base, double exponent);
Complex principal_pow(Complex base, Complex exponent);

enum class DomainTag { disc, half_plane };

/// Black-box evaluator: value and first derivative at a point. Derivatives
/// are analytic formulas wherever we construct these; the finite-difference
/// fallback (central, step 1e-5, one Richardson pass) is used only when no
/// formula was supplied.
struct PointwiseFunction {
    std::function<Complex(Complex)> value_at;
    std::function<Complex(Complex)> derivative_at; // may be empty
    DomainTag domain_tag = DomainTag::half_plane;

    Complex value(Complex z) const;
    Complex derivative(Complex z) const;

    static PointwiseFunction constant(Complex v, DomainTag tag);
    static PointwiseFunction from_taylor(TaylorPolynomial f, DomainTag tag = DomainTag::disc);
};

/// Cocycle exponent gamma > 0 of the weight (phi')^gamma.
struct WeightParam {
    double gamma;

    explicit WeightParam(double g) : gamma(g) {
        if (!(g > 0.0)) throw ParamError("WeightParam: gamma must be positive");
    }
};

/// S_phi f = (phi')^gamma (f o phi) with derivative assembled by the
/// product/chain rule.
PointwiseFunction weighted_composition(const MobiusMap& m, WeightParam gamma,
                                       const PointwiseFunction& f);

/// S_psi: half-plane evaluator -> disc evaluator, (psi'(z))^gamma f(psi(z)).
PointwiseFunction s_psi(WeightParam gamma, const PointwiseFunction& f);
/// S_psi^{-1}: disc evaluator -> half-plane evaluator.
PointwiseFunction s_psi_inv(WeightParam gamma, const PointwiseFunction& g);

/// S_{u_t} on the disc, u_t(z) = e^{-2it} z: f -> e^{-2i*gamma*t} f(e^{-2it} z).
PointwiseFunction disc_rotation_composition(WeightParam gamma, double t,
                                            const PointwiseFunction& f);

/// |S_{phi_t} f (w) - (S_psi^{-1} S_{u_t} S_psi f)(w)| at a half-plane probe.
double similarity_residual(double t, WeightParam gamma, const PointwiseFunction& f, Complex w);

/// Generator of S_{phi_t}: Delta h = -2 gamma z h(z) - (1+z^2) h'(z).
Complex delta_apply(WeightParam gamma, const PointwiseFunction& h, Complex z);

/// e_n = S_psi^{-1} z^n: e_n(w) = (2i/(w+i)^2)^gamma ((w-i)/(w+i))^n,
/// eigenfunction of Delta with eigenvalue -2(gamma+n)i.
PointwiseFunction eigenfunction(WeightParam gamma, std::size_t n);

/// Branch-safe probe region for delta_resolvent (keeps w -+ i off the
/// principal cut along the integration segment).
bool in_resolvent_probe_region(Complex z);

/// R(mu, Delta) h at z: prefactor (z-i)^{iA} (z+i)^{-(iA+2 gamma)} times the
/// kernel integral from the Cayley image of the disc origin (w = i) to z,
/// A = (mu + 2i gamma)/2. Requires Im A >= 0.25 and
/// rule.jacobi_exponent = Im A - 1.
Complex delta_resolvent(WeightParam gamma, Complex mu, const PointwiseFunction& h, Complex z,
                        const IntervalRule& rule);

} // namespace oplab
