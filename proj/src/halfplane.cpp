#include "oplab/halfplane.hpp"

#include <cmath>

namespace oplab {

namespace {

constexpr double kPoleGuard = 1e-8;
constexpr double kBranchGuard = 1e-10;
constexpr double kEigenvalueGuard = 1e-10;

Complex fd_derivative(const std::function<Complex(Complex)>& f, Complex z) {
    // Central difference with one Richardson pass; fine for analytic
    // evaluators away from their singularities.
    const double h = 1e-5;
    const Complex d1 = (f(z + h) - f(z - h)) / (2.0 * h);
    const Complex d2 = (f(z + 0.5 * h) - f(z - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

void require_tag(const PointwiseFunction& f, DomainTag tag, const char* who) {
    if (f.domain_tag != tag) throw ParamError(std::string(who) + ": wrong domain tag");
}

} // namespace

MobiusMap MobiusMap::rotation(double t) {
    return MobiusMap{std::cos(t), -std::sin(t), std::sin(t), std::cos(t)};
}

MobiusMap MobiusMap::compose(const MobiusMap& o) const {
    return MobiusMap{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

Complex mobius_apply(const MobiusMap& m, Complex z) {
    const Complex den = m.c * z + m.d;
    if (std::abs(den) < kPoleGuard) throw SingularityError("mobius_apply: pole");
    return (m.a * z + m.b) / den;
}

Complex mobius_derivative(const MobiusMap& m, Complex z) {
    const Complex den = m.c * z + m.d;
    if (std::abs(den) < kPoleGuard) throw SingularityError("mobius_derivative: pole");
    return 1.0 / (den * den);
}

Complex cayley(Complex z) {
    if (std::abs(z - 1.0) < kPoleGuard) throw SingularityError("cayley: pole at z = 1");
    return Complex{0.0, 1.0} * (1.0 + z) / (1.0 - z);
}

Complex cayley_inv(Complex w) {
    if (std::abs(w + Complex{0.0, 1.0}) < kPoleGuard) {
        throw SingularityError("cayley_inv: pole at w = -i");
    }
    return (w - Complex{0.0, 1.0}) / (w + Complex{0.0, 1.0});
}

double conjugation_identity_residual(double t, Complex z) {
    const MobiusMap phi = MobiusMap::rotation(t);
    if (std::abs(phi.c * z + phi.d) < kPoleGuard) {
        throw SingularityError("conjugation_identity_residual: phi_t pole");
    }
    const Complex zeta = std::polar(1.0, -2.0 * t) * cayley_inv(z);
    if (std::abs(zeta - 1.0) < kPoleGuard) {
        throw SingularityError("conjugation_identity_residual: cayley pole");
    }
    return std::abs(mobius_apply(phi, z) - cayley(zeta));
}

Complex principal_pow(Complex base, double exponent) {
    if (std::abs(base.imag()) < kBranchGuard && base.real() < kBranchGuard) {
        throw BranchError("principal_pow: base on the cut (-inf, 0]");
    }
    return std::exp(exponent * std::log(base));
}

Complex principal_pow(Complex base, Complex exponent) {
    if (std::abs(base.imag()) < kBranchGuard && base.real() < kBranchGuard) {
        throw BranchError("principal_pow: base on the cut (-inf, 0]");
    }
    return std::exp(exponent * std::log(base));
}

Complex PointwiseFunction::value(Complex z) const { return value_at(z); }

Complex PointwiseFunction::derivative(Complex z) const {
    if (derivative_at) return derivative_at(z);
    return fd_derivative(value_at, z);
}

PointwiseFunction PointwiseFunction::constant(Complex v, DomainTag tag) {
    PointwiseFunction f;
    f.value_at = [v](Complex) { return v; };
    f.derivative_at = [](Complex) { return Complex{0.0, 0.0}; };
    f.domain_tag = tag;
    return f;
}

PointwiseFunction PointwiseFunction::from_taylor(TaylorPolynomial poly, DomainTag tag) {
    PointwiseFunction f;
    const TaylorPolynomial dpoly = differentiate(poly);
    f.value_at = [poly](Complex z) { return evaluate(poly, z); };
    f.derivative_at = [dpoly](Complex z) { return evaluate(dpoly, z); };
    f.domain_tag = tag;
    return f;
}

PointwiseFunction weighted_composition(const MobiusMap& m, WeightParam gamma,
                                       const PointwiseFunction& f) {
    const double g = gamma.gamma;
    PointwiseFunction out;
    out.domain_tag = f.domain_tag;
    out.value_at = [m, g, f](Complex z) {
        return principal_pow(mobius_derivative(m, z), g) * f.value(mobius_apply(m, z));
    };
    // (W^g f(phi))' = W^g [ -2cg/(cz+d) f(phi) + W f'(phi) ],  W = (cz+d)^{-2}.
    out.derivative_at = [m, g, f](Complex z) {
        const Complex den = m.c * z + m.d;
        if (std::abs(den) < kPoleGuard) throw SingularityError("weighted_composition: pole");
        const Complex W = 1.0 / (den * den);
        const Complex phi_z = mobius_apply(m, z);
        return principal_pow(W, g) *
               (-2.0 * m.c * g / den * f.value(phi_z) + W * f.derivative(phi_z));
    };
    return out;
}

PointwiseFunction s_psi(WeightParam gamma, const PointwiseFunction& f) {
    require_tag(f, DomainTag::half_plane, "s_psi");
    const double g = gamma.gamma;
    PointwiseFunction out;
    out.domain_tag = DomainTag::disc;
    // psi'(z) = 2i/(1-z)^2, psi''(z) = 4i/(1-z)^3 = psi' * 2/(1-z).
    out.value_at = [g, f](Complex z) {
        const Complex one_minus = 1.0 - z;
        if (std::abs(one_minus) < kPoleGuard) throw SingularityError("s_psi: pole at z = 1");
        const Complex w = Complex{0.0, 2.0} / (one_minus * one_minus);
        return principal_pow(w, g) * f.value(cayley(z));
    };
    out.derivative_at = [g, f](Complex z) {
        const Complex one_minus = 1.0 - z;
        if (std::abs(one_minus) < kPoleGuard) throw SingularityError("s_psi: pole at z = 1");
        const Complex w = Complex{0.0, 2.0} / (one_minus * one_minus);
        const Complex psi_z = cayley(z);
        return principal_pow(w, g) *
               (2.0 * g / one_minus * f.value(psi_z) + w * f.derivative(psi_z));
    };
    return out;
}

PointwiseFunction s_psi_inv(WeightParam gamma, const PointwiseFunction& f) {
    require_tag(f, DomainTag::disc, "s_psi_inv");
    const double g = gamma.gamma;
    PointwiseFunction out;
    out.domain_tag = DomainTag::half_plane;
    // (psi^{-1})'(w) = 2i/(w+i)^2, (psi^{-1})''(w) = -4i/(w+i)^3.
    out.value_at = [g, f](Complex w) {
        const Complex wp = w + Complex{0.0, 1.0};
        if (std::abs(wp) < kPoleGuard) throw SingularityError("s_psi_inv: pole at w = -i");
        const Complex d = Complex{0.0, 2.0} / (wp * wp);
        return principal_pow(d, g) * f.value(cayley_inv(w));
    };
    out.derivative_at = [g, f](Complex w) {
        const Complex wp = w + Complex{0.0, 1.0};
        if (std::abs(wp) < kPoleGuard) throw SingularityError("s_psi_inv: pole at w = -i");
        const Complex d = Complex{0.0, 2.0} / (wp * wp);
        const Complex zeta = cayley_inv(w);
        return principal_pow(d, g) *
               (-2.0 * g / wp * f.value(zeta) + d * f.derivative(zeta));
    };
    return out;
}

PointwiseFunction disc_rotation_composition(WeightParam gamma, double t,
                                            const PointwiseFunction& f) {
    require_tag(f, DomainTag::disc, "disc_rotation_composition");
    const Complex weight = std::polar(1.0, -2.0 * gamma.gamma * t);
    const Complex rot = std::polar(1.0, -2.0 * t);
    PointwiseFunction out;
    out.domain_tag = DomainTag::disc;
    out.value_at = [weight, rot, f](Complex z) { return weight * f.value(rot * z); };
    out.derivative_at = [weight, rot, f](Complex z) { return weight * rot * f.derivative(rot * z); };
    return out;
}

double similarity_residual(double t, WeightParam gamma, const PointwiseFunction& f, Complex w) {
    if (std::fabs(t) > 0.5) {
        throw ParamError("similarity_residual: |t| <= 0.5 is the branch-safe window");
    }
    require_tag(f, DomainTag::half_plane, "similarity_residual");
    const Complex direct = weighted_composition(MobiusMap::rotation(t), gamma, f).value(w);
    const PointwiseFunction conjugated =
        s_psi_inv(gamma, disc_rotation_composition(gamma, t, s_psi(gamma, f)));
    return std::abs(direct - conjugated.value(w));
}

Complex delta_apply(WeightParam gamma, const PointwiseFunction& h, Complex z) {
    return -2.0 * gamma.gamma * z * h.value(z) - (1.0 + z * z) * h.derivative(z);
}

PointwiseFunction eigenfunction(WeightParam gamma, std::size_t n) {
    const double g = gamma.gamma;
    PointwiseFunction e;
    e.domain_tag = DomainTag::half_plane;
    const Complex i{0.0, 1.0};
    e.value_at = [g, n, i](Complex w) {
        const Complex wp = w + i;
        if (std::abs(wp) < kPoleGuard) throw SingularityError("eigenfunction: pole at w = -i");
        const Complex head = principal_pow(2.0 * i / (wp * wp), g);
        Complex blaschke{1.0, 0.0};
        const Complex ratio = (w - i) / wp;
        for (std::size_t j = 0; j < n; ++j) blaschke *= ratio;
        return head * blaschke;
    };
    e.derivative_at = [g, n, i](Complex w) {
        const Complex wp = w + i;
        if (std::abs(wp) < kPoleGuard) throw SingularityError("eigenfunction: pole at w = -i");
        const Complex head = principal_pow(2.0 * i / (wp * wp), g);
        const Complex ratio = (w - i) / wp;
        Complex ratio_nm1{1.0, 0.0};
        for (std::size_t j = 0; j + 1 < n; ++j) ratio_nm1 *= ratio;
        const Complex ratio_n = (n == 0) ? Complex{1.0, 0.0} : ratio_nm1 * ratio;
        // d/dw [head] = head * (-2g/(w+i)); d/dw [ratio^n] = n ratio^{n-1} 2i/(w+i)^2.
        Complex d = head * (-2.0 * g / wp) * ratio_n;
        if (n > 0) {
            d += head * static_cast<double>(n) * ratio_nm1 * (2.0 * i / (wp * wp));
        }
        return d;
    };
    return e;
}

bool in_resolvent_probe_region(Complex z) {
    return std::abs(z) <= 2.0 && z.real() >= 0.1 && z.imag() >= 0.1 &&
           std::abs(z - Complex{0.0, 1.0}) >= 0.3;
}

Complex delta_resolvent(WeightParam gamma, Complex mu, const PointwiseFunction& h, Complex z,
                        const IntervalRule& rule) {
    if (!in_resolvent_probe_region(z)) {
        throw BranchError("delta_resolvent: z outside the branch-safe probe region");
    }
    const double g = gamma.gamma;
    const Complex i{0.0, 1.0};
    const Complex A = 0.5 * (mu + 2.0 * i * g);
    const double im_a = A.imag(); // = (Im mu + 2 gamma)/2

    for (std::size_t n = 0; n < 64; ++n) {
        if (std::abs(mu + 2.0 * (g + static_cast<double>(n)) * i) < kEigenvalueGuard) {
            throw SpectrumError("delta_resolvent: mu hits the point spectrum of Delta");
        }
    }
    if (!(im_a >= 0.25)) {
        throw DivergenceError("delta_resolvent: kernel not integrable at the base point "
                              "(need Im((mu + 2i gamma)/2) >= 0.25)");
    }
    const Complex a_full = -i * A - 1.0; // Re = Im A - 1, Im = -Re A
    if (std::abs(rule.jacobi_exponent - a_full.real()) > 1e-12) {
        throw ParamError("delta_resolvent: rule.jacobi_exponent must equal Im((mu+2ig)/2) - 1");
    }

    // Segment w = i + s (z - i), s in [0,1]; the disc-side base point 0 maps
    // to w = i. phi collects every factor that is analytic at s = 0.
    const Complex dir = z - i;
    const Complex expo = i * A + 2.0 * g - 1.0;
    const auto phi = [&](double s) {
        const Complex w = i + s * dir;
        return principal_pow(2.0 * i + s * dir, expo) * h.value(w);
    };

    // Two-term Taylor head at s = 0 (phi'(0) by a one-sided O(step^4) stencil).
    const double step = 0.02;
    const Complex phi0 = phi(0.0);
    const Complex dphi0 = (-25.0 * phi0 + 48.0 * phi(step) - 36.0 * phi(2.0 * step) +
                           16.0 * phi(3.0 * step) - 3.0 * phi(4.0 * step)) /
                          (12.0 * step);

    Complex integral = phi0 / (a_full + 1.0) + dphi0 / (a_full + 2.0);
    const double osc = a_full.imag();
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const double s = rule.nodes[q];
        const Complex rest = phi(s) - phi0 - dphi0 * s;
        integral += rule.weights[q] * std::polar(1.0, osc * std::log(s)) * rest;
    }

    return principal_pow(z + i, -(i * A + 2.0 * g)) * integral;
}

} // namespace oplab
