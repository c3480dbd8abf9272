#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oplab/bloch.hpp"
#include "oplab/random_corpus.hpp"

using namespace oplab;

namespace {

// Independent dense-grid oracle: a plain lower approximation of the sup with
// no refinement, on a much finer mesh than the estimator's coarse pass.
double brute_force_seminorm(const TaylorPolynomial& f) {
    const TaylorPolynomial df = differentiate(f);
    double best = 0.0;
    for (int it = 0; it < 720; ++it) {
        const double theta = 2.0 * std::numbers::pi * it / 720.0;
        for (int ir = 0; ir < 1500; ++ir) {
            const double r = (1.0 - 1e-6) * ir / 1499.0;
            best = std::max(best, (1.0 - r * r) * std::abs(evaluate(df, std::polar(r, theta))));
        }
    }
    return best;
}

// Calculus oracle for monomials: max of (1 - r^2) n r^{n-1} at r^2 = (n-1)/(n+1).
double monomial_seminorm(std::size_t n) {
    if (n == 0) return 0.0;
    if (n == 1) return 1.0;
    const double nn = static_cast<double>(n);
    const double r2 = (nn - 1.0) / (nn + 1.0);
    return nn * (1.0 - r2) * std::pow(r2, (nn - 1.0) / 2.0);
}

} // namespace

TEST_CASE("seminorm of z is 1, attained near the origin") {
    const NormEstimate est =
        bloch_seminorm(TaylorPolynomial::monomial(1), BlochGrid::for_degree(1));
    CHECK(est.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(est.attained_at) < 1e-4);
}

TEST_CASE("seminorm of a constant is zero") {
    const NormEstimate est =
        bloch_seminorm(TaylorPolynomial{{Complex{5.0, 0.0}}}, BlochGrid::for_degree(0));
    CHECK(est.value == 0.0);
}

TEST_CASE("seminorm of z^2 matches the calculus oracle 4/(3 sqrt 3)") {
    const double expected = 4.0 / (3.0 * std::sqrt(3.0)); // max of (1-r^2) 2r at r = 1/sqrt(3)
    CHECK(expected == doctest::Approx(0.769800358919501).epsilon(1e-14));
    const NormEstimate est =
        bloch_seminorm(TaylorPolynomial::monomial(2), BlochGrid::for_degree(2));
    CHECK(est.value == doctest::Approx(expected).epsilon(1e-12));
    CHECK(std::abs(std::abs(est.attained_at) - 1.0 / std::sqrt(3.0)) < 1e-6);
}

TEST_CASE("monomial seminorms match the closed form for n <= 12") {
    for (std::size_t n = 1; n <= 12; ++n) {
        const NormEstimate est =
            bloch_seminorm(TaylorPolynomial::monomial(n), BlochGrid::for_degree(n));
        CHECK(est.value == doctest::Approx(monomial_seminorm(n)).epsilon(1e-11));
    }
}

TEST_CASE("estimator dominates a dense brute-force scan on random polynomials") {
    CorpusRng rng(42);
    for (int i = 0; i < 5; ++i) {
        const TaylorPolynomial f = random_polynomial(rng, rng.integer(2, 10));
        const double est = bloch_seminorm(f, BlochGrid::for_degree(f.degree())).value;
        const double brute = brute_force_seminorm(f);
        CHECK(est >= brute - 1e-9);
        CHECK(est <= brute + 1e-2);
    }
}

TEST_CASE("NormEstimate reports a consistent attained point") {
    CorpusRng rng(43);
    for (int i = 0; i < 10; ++i) {
        const TaylorPolynomial f = random_polynomial(rng, rng.integer(1, 12));
        const NormEstimate est = bloch_seminorm(f, BlochGrid::for_degree(f.degree()));
        const double at_point = (1.0 - std::norm(est.attained_at)) *
                                std::abs(evaluate(differentiate(f), est.attained_at));
        CHECK(est.value == doctest::Approx(at_point).epsilon(1e-12));
    }
}

TEST_CASE("bloch_norm adds |f(0)|") {
    const BlochGrid g0 = BlochGrid::for_degree(2);
    CHECK(bloch_norm(TaylorPolynomial{{Complex{1, 0}}}, g0).value ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bloch_norm(TaylorPolynomial::monomial(1), g0).value ==
          doctest::Approx(1.0).epsilon(1e-12));
    const TaylorPolynomial f{{Complex{2, 0}, Complex{0, 0}, Complex{1, 0}}};
    CHECK(bloch_norm(f, g0).value ==
          doctest::Approx(2.0 + 4.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-12));
}

TEST_CASE("seminorm homogeneity under complex scaling") {
    CorpusRng rng(44);
    for (int i = 0; i < 20; ++i) {
        const TaylorPolynomial f = random_polynomial(rng, rng.integer(1, 12));
        const Complex alpha = 4.0 * rng.unit_square();
        const BlochGrid grid = BlochGrid::for_degree(f.degree());
        const double lhs = bloch_seminorm(alpha * f, grid).value;
        const double rhs = std::abs(alpha) * bloch_seminorm(f, grid).value;
        if (rhs > 0.0) CHECK(std::abs(lhs - rhs) / rhs < 1e-12);
    }
}

TEST_CASE("dilation does not increase the seminorm") {
    CorpusRng rng(45);
    for (int i = 0; i < 10; ++i) {
        const TaylorPolynomial f = random_polynomial(rng, rng.integer(1, 20));
        const BlochGrid grid = BlochGrid::for_degree(f.degree());
        const double base = bloch_seminorm(f, grid).value;
        for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            CHECK(bloch_seminorm(dilate(f, t), grid).value <= base + 1e-9);
        }
    }
}

TEST_CASE("little_bloch_tail: closed-form cases") {
    const BlochGrid g1 = BlochGrid::for_degree(1);
    CHECK(little_bloch_tail(TaylorPolynomial{{Complex{5, 0}}}, 0.5, BlochGrid::for_degree(0)) ==
          0.0);
    // f = z: (1 - r^2) decreasing, sup at the inner edge.
    CHECK(little_bloch_tail(TaylorPolynomial::monomial(1), 0.9, g1) ==
          doctest::Approx(0.19).epsilon(1e-10));
    // f = z^2 past the interior maximum at 1/sqrt(3).
    CHECK(little_bloch_tail(TaylorPolynomial::monomial(2), 0.99, BlochGrid::for_degree(2)) ==
          doctest::Approx((1.0 - 0.9801) * 2.0 * 0.99).epsilon(1e-10));
}

TEST_CASE("little_bloch_tail is monotone nonincreasing in r and vanishes at the boundary") {
    CorpusRng rng(46);
    for (int i = 0; i < 5; ++i) {
        const TaylorPolynomial f = random_polynomial(rng, rng.integer(1, 10));
        const BlochGrid grid = BlochGrid::for_degree(f.degree());
        double prev = 1e300;
        for (double r : {0.1, 0.5, 0.9, 0.999, 0.99999}) {
            const double tail = little_bloch_tail(f, r, grid);
            CHECK(tail <= prev + 1e-9);
            prev = tail;
        }
        CHECK(prev < 5e-3); // polynomials die out at the boundary
    }
}

TEST_CASE("little_bloch_tail rejects r outside (0, r_max)") {
    const BlochGrid grid = BlochGrid::for_degree(1);
    CHECK_THROWS_AS(little_bloch_tail(TaylorPolynomial::monomial(1), grid.r_max, grid),
                    ConfigError);
    CHECK_THROWS_AS(little_bloch_tail(TaylorPolynomial::monomial(1), 0.0, grid), ConfigError);
}

TEST_CASE("growth_bound_margin: pinned values") {
    const BlochGrid g0 = BlochGrid::for_degree(1);
    CHECK(growth_bound_margin(TaylorPolynomial{{Complex{1, 0}}}, Complex{0, 0}, g0) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(growth_bound_margin(TaylorPolynomial::monomial(1), Complex{0, 0}, g0) ==
          doctest::Approx(1.0).epsilon(1e-12));
    // (1 + log(3)/2) * 1 - 0.5
    const double expected = 1.0 + 0.5 * std::log(3.0) - 0.5;
    CHECK(expected == doctest::Approx(1.0493061443340548).epsilon(1e-15));
    CHECK(growth_bound_margin(TaylorPolynomial::monomial(1), Complex{0.5, 0}, g0) ==
          doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("growth_bound_margin is nonnegative up to grid error") {
    CorpusRng rng(47);
    for (int i = 0; i < 20; ++i) {
        const TaylorPolynomial f = random_polynomial(rng, rng.integer(0, 10));
        const BlochGrid grid = BlochGrid::for_degree(f.degree());
        for (int j = 0; j < 5; ++j) {
            const Complex z =
                std::polar(0.95 * rng.uniform01(), 2.0 * std::numbers::pi * rng.uniform01());
            CHECK(growth_bound_margin(f, z, grid) >= -1e-8);
        }
    }
}

TEST_CASE("growth_bound_margin rejects points outside the disc") {
    CHECK_THROWS_AS(growth_bound_margin(TaylorPolynomial::monomial(1), Complex{1.0, 0.0},
                                        BlochGrid::for_degree(1)),
                    DomainError);
}

TEST_CASE("grid validation errors") {
    BlochGrid empty;
    empty.n_theta = 0;
    CHECK_THROWS_AS(bloch_seminorm(TaylorPolynomial::monomial(1), empty), ConfigError);

    BlochGrid coarse;
    coarse.n_theta = 8; // below 4 * degree for degree 12
    CHECK_THROWS_AS(bloch_seminorm(TaylorPolynomial::monomial(12), coarse), ConfigError);

    BlochGrid bad_r;
    bad_r.r_max = 1.0;
    CHECK_THROWS_AS(bloch_seminorm(TaylorPolynomial::monomial(1), bad_r), ConfigError);
}

TEST_CASE("rotating coefficients by unimodular factors preserves the estimated norm") {
    CorpusRng rng(48);
    for (int i = 0; i < 5; ++i) {
        const TaylorPolynomial f = random_polynomial(rng, 12);
        const BlochGrid grid = BlochGrid::for_degree(12);
        const double base = bloch_norm(f, grid).value;
        std::vector<Complex> c(f.coeffs());
        for (std::size_t n = 0; n < c.size(); ++n) {
            c[n] *= std::polar(1.0, 0.77 * static_cast<double>(n));
        }
        const double rotated = bloch_norm(TaylorPolynomial{std::move(c)}, grid).value;
        CHECK(std::abs(rotated - base) < 1e-7);
    }
}
