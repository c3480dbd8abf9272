#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oplab/disc_group.hpp"
#include "oplab/halfplane.hpp"
#include "oplab/random_corpus.hpp"

using namespace oplab;

namespace {

const Complex kI{0.0, 1.0};

const std::vector<Complex> kProbes{{1.0, 1.0}, {0.0, 2.0},  {0.5, 1.5}, {1.5, 0.7},
                                   {0.3, 2.0}, {-0.4, 1.2}, {2.0, 0.5}, {-1.0, 2.5},
                                   {0.8, 0.6}, {-0.2, 0.9}, {1.2, 2.2}, {0.1, 0.4},
                                   {2.5, 1.5}, {-1.7, 0.8}, {0.6, 3.2}, {1.9, 2.8},
                                   {-0.9, 0.5}, {0.2, 1.1}, {1.4, 1.9}, {-1.2, 1.6}};

// Central finite difference oracle for evaluator derivatives.
Complex fd(const PointwiseFunction& f, Complex z, double h = 1e-5) {
    return (f.value(z + h) - f.value(z - h)) / (2.0 * h);
}

} // namespace

TEST_CASE("cayley: pinned values and inverse pair") {
    CHECK(std::abs(cayley(Complex{0.0, 0.0}) - kI) < 1e-16);
    CHECK(std::abs(cayley_inv(kI)) < 1e-16);
    CHECK(std::abs(cayley(Complex{-1.0, 0.0})) < 1e-16);

    CorpusRng rng(11);
    for (int i = 0; i < 100; ++i) {
        const Complex z =
            std::polar(0.98 * rng.uniform01(), 2.0 * std::numbers::pi * rng.uniform01());
        CHECK(std::abs(cayley_inv(cayley(z)) - z) < 1e-13);
        CHECK(cayley(z).imag() > 0.0);
        const Complex w{3.0 * rng.symmetric(), 0.05 + 4.0 * rng.uniform01()};
        CHECK(std::abs(cayley(cayley_inv(w)) - w) < 1e-13);
        CHECK(std::abs(cayley_inv(w)) < 1.0);
    }

    CHECK_THROWS_AS(cayley(Complex{1.0, 0.0}), SingularityError);
    CHECK_THROWS_AS(cayley_inv(Complex{0.0, -1.0}), SingularityError);
}

TEST_CASE("mobius rotation family: pinned maps") {
    const MobiusMap id = MobiusMap::rotation(0.0);
    CHECK(std::abs(mobius_apply(id, Complex{0.7, 1.3}) - Complex{0.7, 1.3}) < 1e-16);

    // phi_{pi/2}(z) = -1/z.
    const MobiusMap quarter = MobiusMap::rotation(std::numbers::pi / 2.0);
    const Complex z{0.4, 1.1};
    CHECK(std::abs(mobius_apply(quarter, z) - (-1.0 / z)) < 1e-15);

    // phi_t'(0) = 1/cos^2 t.
    for (double t : {0.2, 0.9, -0.6}) {
        const Complex d = mobius_derivative(MobiusMap::rotation(t), Complex{0.0, 0.0});
        CHECK(std::abs(d - Complex{1.0 / (std::cos(t) * std::cos(t)), 0.0}) < 1e-14);
    }

    // det stays 1 under composition.
    const MobiusMap m = MobiusMap::rotation(0.7).compose(MobiusMap::rotation(-1.9));
    CHECK(m.a * m.d - m.b * m.c == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(mobius_apply(quarter, Complex{0.0, 0.0}), SingularityError);
}

TEST_CASE("rotation matrices compose exactly") {
    for (double s : {0.3, 1.1, -0.7, 2.4}) {
        for (double t : {0.5, -1.3, 0.9, 3.0}) {
            const MobiusMap lhs = MobiusMap::rotation(s).compose(MobiusMap::rotation(t));
            const MobiusMap rhs = MobiusMap::rotation(s + t);
            CHECK(std::fabs(lhs.a - rhs.a) < 1e-14);
            CHECK(std::fabs(lhs.b - rhs.b) < 1e-14);
            CHECK(std::fabs(lhs.c - rhs.c) < 1e-14);
            CHECK(std::fabs(lhs.d - rhs.d) < 1e-14);
        }
    }
}

TEST_CASE("conjugation identity phi_t = psi o u_t o psi^{-1}") {
    CHECK(conjugation_identity_residual(0.0, Complex{0.5, 1.0}) < 1e-15);
    CHECK(conjugation_identity_residual(std::numbers::pi, Complex{0.5, 1.0}) < 1e-13);
    CHECK(conjugation_identity_residual(std::numbers::pi / 4.0, Complex{0.0, 2.0}) < 1e-13);

    for (double t : {0.1, 0.7, std::numbers::pi / 4.0, std::numbers::pi}) {
        for (int ix = 0; ix < 10; ++ix) {
            for (int iy = 0; iy < 10; ++iy) {
                const Complex z{-2.0 + 4.0 * ix / 9.0, 0.2 + 2.8 * iy / 9.0};
                CHECK(conjugation_identity_residual(t, z) <= 1e-12);
            }
        }
    }
}

TEST_CASE("principal_pow guards the cut") {
    CHECK_THROWS_AS(principal_pow(Complex{-1.0, 0.0}, 0.5), BranchError);
    CHECK_THROWS_AS(principal_pow(Complex{-2.0, 1e-12}, 1.5), BranchError);
    CHECK(std::abs(principal_pow(Complex{0.0, 1.0}, 2.0) - Complex{-1.0, 0.0}) < 1e-15);
}

TEST_CASE("weighted_composition: identity map leaves f unchanged") {
    PointwiseFunction f;
    f.domain_tag = DomainTag::half_plane;
    f.value_at = [](Complex w) { return w * w + Complex{1.0, 0.0}; };
    f.derivative_at = [](Complex w) { return 2.0 * w; };
    const PointwiseFunction out =
        weighted_composition(MobiusMap::identity(), WeightParam(1.7), f);
    for (const Complex& w : kProbes) {
        CHECK(std::abs(out.value(w) - f.value(w)) < 1e-14);
        CHECK(std::abs(out.derivative(w) - f.derivative(w)) < 1e-14);
    }
}

TEST_CASE("weighted_composition with constant 1 is the weight itself") {
    // For f = 1 and gamma = 1 the value is phi'(z) = 1/(z sin t + cos t)^2.
    const double t = 0.3;
    const PointwiseFunction out =
        weighted_composition(MobiusMap::rotation(t), WeightParam(1.0),
                             PointwiseFunction::constant(Complex{1.0, 0.0},
                                                         DomainTag::half_plane));
    for (const Complex& w : kProbes) {
        const Complex den = w * std::sin(t) + std::cos(t);
        CHECK(std::abs(out.value(w) - 1.0 / (den * den)) < 1e-14);
    }
}

TEST_CASE("weighted_composition derivative agrees with finite differences") {
    PointwiseFunction f;
    f.domain_tag = DomainTag::half_plane;
    f.value_at = [](Complex w) { return 1.0 / (w + Complex{0.0, 2.0}); };
    f.derivative_at = [](Complex w) {
        const Complex d = w + Complex{0.0, 2.0};
        return -1.0 / (d * d);
    };
    for (double gamma : {0.5, 1.0, 2.0}) {
        const PointwiseFunction out =
            weighted_composition(MobiusMap::rotation(0.25), WeightParam(gamma), f);
        for (std::size_t i = 0; i < 8; ++i) {
            const Complex w = kProbes[i];
            const Complex analytic = out.derivative(w);
            CHECK(std::abs(analytic - fd(out, w)) <= 1e-6 * (1.0 + std::abs(analytic)));
        }
    }
}

TEST_CASE("disc rotation composition multiplies monomials by phases") {
    const double gamma = 0.8;
    const double t = 0.45;
    for (std::size_t n : {std::size_t{0}, std::size_t{2}, std::size_t{5}}) {
        const PointwiseFunction zn =
            PointwiseFunction::from_taylor(TaylorPolynomial::monomial(n));
        const PointwiseFunction moved =
            disc_rotation_composition(WeightParam(gamma), t, zn);
        const Complex zeta{0.4, -0.3};
        const Complex expected = std::polar(1.0, -2.0 * gamma * t) *
                                 std::polar(1.0, -2.0 * static_cast<double>(n) * t) *
                                 std::pow(zeta, static_cast<double>(n));
        CHECK(std::abs(moved.value(zeta) - expected) < 1e-14);
    }
}

TEST_CASE("disc rotation matches the coefficient group at (c,k)=(-2 gamma,-2)") {
    CorpusRng rng(12);
    const double gamma = 1.3;
    const double t = 0.37;
    const TaylorPolynomial f = random_polynomial(rng, 7);
    const TaylorPolynomial via_group = apply_group(GroupParams(-2.0 * gamma, -2.0), t, f);
    const PointwiseFunction via_eval =
        disc_rotation_composition(WeightParam(gamma), t, PointwiseFunction::from_taylor(f));
    for (const Complex zeta : {Complex{0.2, 0.1}, Complex{-0.5, 0.3}, Complex{0.0, -0.8}}) {
        CHECK(std::abs(via_eval.value(zeta) - evaluate(via_group, zeta)) < 1e-13);
    }
}

TEST_CASE("s_psi / s_psi_inv: pinned values and round trip") {
    const WeightParam g1(1.0);
    const PointwiseFunction one =
        PointwiseFunction::constant(Complex{1.0, 0.0}, DomainTag::half_plane);

    // s_psi(1)(0) = psi'(0) = 2i.
    CHECK(std::abs(s_psi(g1, one).value(Complex{0.0, 0.0}) - Complex{0.0, 2.0}) < 1e-15);

    // Round trip at w = 2i.
    const PointwiseFunction rt = s_psi_inv(g1, s_psi(g1, one));
    CHECK(std::abs(rt.value(Complex{0.0, 2.0}) - Complex{1.0, 0.0}) < 1e-12);

    for (double gamma : {0.5, 1.0, 2.0}) {
        const WeightParam wp(gamma);
        const PointwiseFunction round = s_psi_inv(wp, s_psi(wp, one));
        for (std::size_t i = 0; i < 10; ++i) {
            CHECK(std::abs(round.value(kProbes[i]) - Complex{1.0, 0.0}) <= 1e-10);
        }
        // e_0 = s_psi_inv(1): (2i/(w+i)^2)^gamma.
        const PointwiseFunction e0 =
            s_psi_inv(wp, PointwiseFunction::constant(Complex{1.0, 0.0}, DomainTag::disc));
        for (std::size_t i = 0; i < 10; ++i) {
            const Complex w = kProbes[i];
            const Complex base = 2.0 * kI / ((w + kI) * (w + kI));
            CHECK(std::abs(e0.value(w) - principal_pow(base, gamma)) < 1e-13);
        }
    }

    CHECK_THROWS_AS(s_psi(g1, PointwiseFunction::constant(Complex{1, 0}, DomainTag::disc)),
                    ParamError);
}

TEST_CASE("similarity of S_phi_t with the conjugated route") {
    PointwiseFunction f2;
    f2.domain_tag = DomainTag::half_plane;
    f2.value_at = [](Complex w) { return 1.0 / (w + Complex{0.0, 2.0}); };
    f2.derivative_at = [](Complex w) {
        const Complex d = w + Complex{0.0, 2.0};
        return -1.0 / (d * d);
    };
    const PointwiseFunction one =
        PointwiseFunction::constant(Complex{1.0, 0.0}, DomainTag::half_plane);

    CHECK(similarity_residual(0.0, WeightParam(1.0), one, Complex{1.0, 1.0}) < 1e-14);
    CHECK(similarity_residual(0.4, WeightParam(1.0), one, Complex{1.0, 1.0}) <= 1e-10);
    CHECK(similarity_residual(0.1, WeightParam(0.5), f2, Complex{0.0, 2.0}) <= 1e-8);

    for (double gamma : {1.0, 2.0}) {
        for (double t : {0.5, -0.5, 0.25, -0.125}) {
            for (std::size_t i = 0; i < 8; ++i) {
                CHECK(similarity_residual(t, WeightParam(gamma), f2, kProbes[i]) <= 1e-8);
            }
        }
    }
    for (double t : {0.1, -0.1, 0.05}) {
        for (std::size_t i = 0; i < 8; ++i) {
            CHECK(similarity_residual(t, WeightParam(0.5), f2, kProbes[i]) <= 1e-8);
        }
    }

    CHECK_THROWS_AS(similarity_residual(0.6, WeightParam(1.0), one, Complex{1.0, 1.0}),
                    ParamError);
}

TEST_CASE("eigenfunction: pinned values") {
    // e_0(i) = 2i/(2i)^2 = -i/2 for gamma = 1.
    CHECK(std::abs(eigenfunction(WeightParam(1.0), 0).value(kI) - Complex{0.0, -0.5}) < 1e-15);

    // The (w - i) factor vanishes at i for n >= 1.
    CHECK(std::abs(eigenfunction(WeightParam(1.0), 1).value(kI)) < 1e-15);

    // Principal square root of -i/2 for gamma = 1/2.
    const Complex expected = std::sqrt(0.5) * std::polar(1.0, -std::numbers::pi / 4.0);
    CHECK(std::abs(eigenfunction(WeightParam(0.5), 0).value(kI) - expected) < 1e-15);

    CHECK_THROWS_AS(eigenfunction(WeightParam(1.0), 0).value(Complex{0.0, -1.0}),
                    SingularityError);
}

TEST_CASE("eigenfunction derivatives agree with finite differences") {
    for (double gamma : {0.5, 1.0, 2.0}) {
        for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{4}}) {
            const PointwiseFunction en = eigenfunction(WeightParam(gamma), n);
            for (std::size_t i = 0; i < 10; ++i) {
                const Complex w = kProbes[i];
                const Complex analytic = en.derivative(w);
                CHECK(std::abs(analytic - fd(en, w)) <= 1e-6 * (1.0 + std::abs(analytic)));
            }
        }
    }
}

TEST_CASE("delta_apply: closed forms") {
    const WeightParam g1(1.0);

    // h = 1: Delta h = -2 gamma z.
    const PointwiseFunction one =
        PointwiseFunction::constant(Complex{1.0, 0.0}, DomainTag::half_plane);
    const Complex z{0.0, 0.5};
    CHECK(std::abs(delta_apply(g1, one, z) - (-2.0 * z)) < 1e-15);

    // h = e_0: Delta e_0 = -2 gamma i e_0 (symbolic reduction).
    const PointwiseFunction e0 = eigenfunction(g1, 0);
    for (std::size_t i = 0; i < 10; ++i) {
        const Complex w = kProbes[i];
        CHECK(std::abs(delta_apply(g1, e0, w) + 2.0 * kI * e0.value(w)) <=
              1e-12 * std::abs(e0.value(w)));
    }
}

TEST_CASE("eigen-residuals: Delta e_n = -2(gamma+n) i e_n") {
    for (double gamma : {0.5, 1.0, 2.0}) {
        const WeightParam wp(gamma);
        for (std::size_t n = 0; n <= 8; ++n) {
            const PointwiseFunction en = eigenfunction(wp, n);
            const Complex ev{0.0, -2.0 * (gamma + static_cast<double>(n))};
            for (const Complex& w : kProbes) {
                const Complex value = en.value(w);
                if (std::abs(value) < 1e-14) continue;
                CHECK(std::abs(delta_apply(wp, en, w) - ev * value) <= 1e-9 * std::abs(value));
            }
        }
    }
}

TEST_CASE("delta_apply matches the t-derivative of the composition group") {
    PointwiseFunction h;
    h.domain_tag = DomainTag::half_plane;
    h.value_at = [](Complex w) { return 1.0 / (w + Complex{0.0, 2.0}); };
    h.derivative_at = [](Complex w) {
        const Complex d = w + Complex{0.0, 2.0};
        return -1.0 / (d * d);
    };
    for (double gamma : {0.5, 1.0, 2.0}) {
        const WeightParam wp(gamma);
        for (std::size_t i = 0; i < 6; ++i) {
            const Complex w = kProbes[i];
            const double step = 1e-5;
            const Complex splus =
                weighted_composition(MobiusMap::rotation(step), wp, h).value(w);
            const Complex sminus =
                weighted_composition(MobiusMap::rotation(-step), wp, h).value(w);
            const Complex numeric = (splus - sminus) / (2.0 * step);
            const Complex analytic = delta_apply(wp, h, w);
            CHECK(std::abs(numeric - analytic) <= 1e-5 * (1.0 + std::abs(analytic)));
        }
    }
}

TEST_CASE("generator-as-derivative converges at first order") {
    PointwiseFunction h;
    h.domain_tag = DomainTag::half_plane;
    h.value_at = [](Complex w) { return 1.0 / (w + Complex{0.0, 2.0}); };
    h.derivative_at = [](Complex w) {
        const Complex d = w + Complex{0.0, 2.0};
        return -1.0 / (d * d);
    };
    const WeightParam wp(1.0);
    for (std::size_t i = 0; i < 6; ++i) {
        const Complex w = kProbes[i];
        const Complex dh = delta_apply(wp, h, w);
        const auto err_at = [&](double t) {
            const Complex st = weighted_composition(MobiusMap::rotation(t), wp, h).value(w);
            return std::abs((st - h.value(w)) / t - dh);
        };
        const double e1 = err_at(1e-3);
        const double e2 = err_at(5e-4);
        if (e2 > 1e-12) {
            CHECK(e1 / e2 >= 1.8);
            CHECK(e1 / e2 <= 2.2);
        }
    }
}

TEST_CASE("delta_resolvent: eigenfunction division oracle") {
    const WeightParam g1(1.0);
    const Complex mu{1.0, 0.0};
    const IntervalRule rule = make_interval_rule(64, (mu.imag() + 2.0) / 2.0 - 1.0);
    const PointwiseFunction e0 = eigenfunction(g1, 0);
    for (const Complex z : {Complex{0.4, 0.4}, Complex{1.0, 0.3}, Complex{0.5, 1.5}}) {
        const Complex got = delta_resolvent(g1, mu, e0, z, rule);
        const Complex expected = e0.value(z) / (mu + 2.0 * kI); // R e0 = e0/(1+2i)
        CHECK(std::abs(got - expected) <= 1e-6 * std::abs(expected));
    }
}

TEST_CASE("delta_resolvent agrees with the conjugated diagonal route") {
    for (double gamma : {0.5, 1.0, 2.0}) {
        const WeightParam wp(gamma);
        const Complex mu{-1.2, 0.7};
        const IntervalRule rule = make_interval_rule(64, (mu.imag() + 2.0 * gamma) / 2.0 - 1.0);

        // h with S_psi h = z: the resolvent is division by mu + 2(gamma+1)i.
        const PointwiseFunction h_mono =
            s_psi_inv(wp, PointwiseFunction::from_taylor(TaylorPolynomial::monomial(1)));
        for (const Complex z : {Complex{0.4, 0.4}, Complex{1.0, 0.3}}) {
            const Complex got = delta_resolvent(wp, mu, h_mono, z, rule);
            const Complex expected = h_mono.value(z) / (mu + 2.0 * (gamma + 1.0) * kI);
            CHECK(std::abs(got - expected) <= 1e-6 * std::abs(expected));
        }

        // General polynomial conjugate.
        const TaylorPolynomial g{{Complex{0.3, 0.1}, Complex{0.5, 0.0}, Complex{0.0, 0.2},
                                  Complex{0.25, -0.15}}};
        const PointwiseFunction h = s_psi_inv(wp, PointwiseFunction::from_taylor(g));
        const PointwiseFunction conjugated = s_psi_inv(
            wp, PointwiseFunction::from_taylor(
                    resolvent_diagonal(GroupParams(-2.0 * gamma, -2.0), mu, g)));
        for (const Complex z :
             {Complex{0.4, 0.4}, Complex{0.8, 0.9}, Complex{1.2, 0.6}, Complex{0.5, 1.5}}) {
            const Complex got = delta_resolvent(wp, mu, h, z, rule);
            const Complex expected = conjugated.value(z);
            CHECK(std::abs(got - expected) <= 1e-6 * std::abs(expected));
        }
    }
}

TEST_CASE("delta_resolvent satisfies the defining equation") {
    const WeightParam wp(0.5);
    const Complex mu{1.0, 0.3};
    const IntervalRule rule = make_interval_rule(64, (mu.imag() + 2.0 * wp.gamma) / 2.0 - 1.0);

    // Random smooth h: a combination of eigenfunctions plus a rational term.
    const PointwiseFunction e0 = eigenfunction(wp, 0);
    const PointwiseFunction e1 = eigenfunction(wp, 1);
    PointwiseFunction h;
    h.domain_tag = DomainTag::half_plane;
    h.value_at = [e0, e1](Complex w) {
        return e0.value(w) + 0.5 * e1.value(w) + 0.2 / (w + Complex{0.0, 3.0});
    };
    h.derivative_at = [e0, e1](Complex w) {
        const Complex d = w + Complex{0.0, 3.0};
        return e0.derivative(w) + 0.5 * e1.derivative(w) - 0.2 / (d * d);
    };

    PointwiseFunction rh;
    rh.domain_tag = DomainTag::half_plane;
    rh.value_at = [&](Complex z) { return delta_resolvent(wp, mu, h, z, rule); };

    for (const Complex z : {Complex{0.3, 0.4}, Complex{0.8, 0.9}, Complex{1.2, 0.6},
                            Complex{0.5, 1.5}, Complex{1.0, 0.3}}) {
        const Complex rv = rh.value(z);
        const Complex drv = delta_apply(wp, rh, z);
        CHECK(std::abs(mu * rv - drv - h.value(z)) <= 1e-6 * (1.0 + std::abs(h.value(z))));
    }
}

TEST_CASE("delta_resolvent guards its preconditions") {
    const WeightParam g1(1.0);
    const PointwiseFunction e0 = eigenfunction(g1, 0);
    const IntervalRule rule = make_interval_rule(32, 0.0);

    CHECK(in_resolvent_probe_region(Complex{0.4, 0.4}));
    CHECK_FALSE(in_resolvent_probe_region(Complex{-0.5, 0.5}));
    CHECK_FALSE(in_resolvent_probe_region(Complex{0.05, 1.05}));

    // Outside the branch-safe region.
    CHECK_THROWS_AS(delta_resolvent(g1, Complex{1.0, 0.0}, e0, Complex{-1.0, 1.0}, rule),
                    BranchError);

    // mu on the point spectrum of Delta.
    const IntervalRule rule_spec = make_interval_rule(32, (-2.0 + 2.0) / 2.0 - 1.0 + 1.0);
    CHECK_THROWS_AS(
        delta_resolvent(g1, Complex{0.0, -2.0}, e0, Complex{0.4, 0.4}, rule_spec),
        SpectrumError);

    // Kernel exponent not integrable at the base point.
    CHECK_THROWS_AS(delta_resolvent(WeightParam(0.1), Complex{1.0, -1.0}, e0,
                                    Complex{0.4, 0.4}, rule),
                    DivergenceError);

    // Rule mismatch.
    CHECK_THROWS_AS(delta_resolvent(g1, Complex{1.0, 0.0}, e0, Complex{0.4, 0.4},
                                    make_interval_rule(32, 0.5)),
                    ParamError);
}
