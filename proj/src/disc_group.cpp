#include "oplab/disc_group.hpp"

#include <cmath>

#include "oplab/random_corpus.hpp"

namespace oplab {

namespace {

void require_valid(const GroupParams& p) {
    if (p.k == 0.0) throw ConfigError("GroupParams: k must be nonzero");
}

// Leading exponent of the substituted resolvent kernel, a = m + i*lambda - 1.
Complex kernel_exponent(Complex lambda, std::size_t m) {
    return Complex{static_cast<double>(m) - lambda.imag() - 1.0, lambda.real()};
}

void check_resolvent_preconditions(const GroupParams& p, Complex mu, const TaylorPolynomial& h,
                                   std::size_t m, const IntervalRule& rule, Complex lambda,
                                   double guard) {
    if (m == 0) throw ParamError("resolvent_integral: m must be positive");
    for (std::size_t n = 0; n < m && n <= h.degree(); ++n) {
        if (h.coeff(n) != Complex{0.0, 0.0}) {
            throw ParamError("resolvent_integral: h must lie in ran(M_z^m)");
        }
    }
    if (!(static_cast<double>(m) > lambda.imag())) {
        throw DivergenceError("resolvent_integral: need m > Im((mu - ic)/k)");
    }
    const double beta = static_cast<double>(m) - lambda.imag() - 1.0;
    if (std::abs(rule.jacobi_exponent - beta) > 1e-12) {
        throw ParamError("resolvent_integral: rule.jacobi_exponent must equal m - Im(lambda) - 1");
    }
    // Same eigenvalue guard as the diagonal route.
    for (std::size_t n = m; n <= h.degree(); ++n) {
        if (h.coeff(n) == Complex{0.0, 0.0}) continue;
        if (std::abs(mu - generator_eigenvalue(p, n)) < guard) {
            throw SpectrumError("resolvent_integral: mu hits the point spectrum");
        }
    }
}

} // namespace

Complex generator_eigenvalue(const GroupParams& p, std::size_t n) {
    return Complex{0.0, p.c + p.k * static_cast<double>(n)};
}

TaylorPolynomial apply_group(const GroupParams& p, double t, const TaylorPolynomial& f) {
    require_valid(p);
    std::vector<Complex> c(f.coeffs());
    for (std::size_t n = 0; n < c.size(); ++n) {
        c[n] *= std::polar(1.0, (p.c + p.k * static_cast<double>(n)) * t);
    }
    return TaylorPolynomial{std::move(c)};
}

TaylorPolynomial apply_generator(const GroupParams& p, const TaylorPolynomial& f) {
    require_valid(p);
    std::vector<Complex> c(f.coeffs());
    for (std::size_t n = 0; n < c.size(); ++n) c[n] *= generator_eigenvalue(p, n);
    return TaylorPolynomial{std::move(c)};
}

BaseReduction reduce_to_base(const GroupParams& p, Complex mu) {
    require_valid(p);
    return BaseReduction{(mu - Complex{0.0, p.c}) / p.k, 1.0 / p.k};
}

TaylorPolynomial resolvent_diagonal(const GroupParams& p, Complex mu, const TaylorPolynomial& f,
                                    double eigenvalue_guard) {
    require_valid(p);
    std::vector<Complex> c(f.coeffs());
    for (std::size_t n = 0; n < c.size(); ++n) {
        if (c[n] == Complex{0.0, 0.0}) continue;
        const Complex d = mu - generator_eigenvalue(p, n);
        if (std::abs(d) < eigenvalue_guard) {
            throw SpectrumError("resolvent_diagonal: mu hits the point spectrum");
        }
        c[n] /= d;
    }
    return TaylorPolynomial{std::move(c)};
}

TaylorPolynomial resolvent_integral(const GroupParams& p, Complex mu, const TaylorPolynomial& h,
                                    std::size_t m, const IntervalRule& rule,
                                    double eigenvalue_guard) {
    require_valid(p);
    if (h.is_zero()) return TaylorPolynomial::zero();
    const Complex lambda = reduce_to_base(p, mu).lambda;
    check_resolvent_preconditions(p, mu, h, m, rule, lambda, eigenvalue_guard);

    const Complex a = kernel_exponent(lambda, m);
    const TaylorPolynomial g = q_power(h, m);
    const Complex front = Complex{0.0, 1.0} / p.k;

    std::vector<Complex> out(g.degree() + 1 + m, Complex{0.0, 0.0});
    for (std::size_t j = 0; j <= g.degree(); ++j) {
        if (g.coeff(j) == Complex{0.0, 0.0}) continue;
        out[m + j] = front * g.coeff(j) * ray_integrate(TaylorPolynomial::monomial(j), 1.0, a, rule);
    }
    return TaylorPolynomial{std::move(out)};
}

TaylorPolynomial truncated_resolvent_cr(const GroupParams& p, Complex mu,
                                        const TaylorPolynomial& h, std::size_t m, double r,
                                        const IntervalRule& rule, double eigenvalue_guard) {
    require_valid(p);
    if (!(r > 0.0) || !(r < 1.0)) throw ParamError("truncated_resolvent_cr: r must lie in (0,1)");
    if (h.is_zero()) return TaylorPolynomial::zero();
    const Complex lambda = reduce_to_base(p, mu).lambda;
    check_resolvent_preconditions(p, mu, h, m, rule, lambda, eigenvalue_guard);

    // Substituting t = r s maps the truncated kernel integral onto the
    // standard rule: int_0^r t^{a+j} dt = r^{a+j+1} int_0^1 s^{a+j} ds.
    const Complex a = kernel_exponent(lambda, m);
    const TaylorPolynomial g = q_power(h, m);
    const Complex front = Complex{0.0, 1.0} / p.k;
    const Complex r_pow_a1 = std::exp((a + 1.0) * std::log(r));

    std::vector<Complex> out(g.degree() + 1 + m, Complex{0.0, 0.0});
    double rj = 1.0;
    for (std::size_t j = 0; j <= g.degree(); ++j) {
        if (g.coeff(j) != Complex{0.0, 0.0}) {
            out[m + j] = front * g.coeff(j) * r_pow_a1 * rj *
                         ray_integrate(TaylorPolynomial::monomial(j), 1.0, a, rule);
        }
        rj *= r;
    }
    return TaylorPolynomial{std::move(out)};
}

TaylorPolynomial adjoint_apply(const GroupParams& p, double t, const TaylorPolynomial& g) {
    return apply_group(p, -t, g);
}

SpectrumReport spectrum(const GroupParams& p, std::size_t N) {
    require_valid(p);
    SpectrumReport rep;
    rep.truncation = N;
    rep.eigenvalues.reserve(N + 1);
    rep.eigenfunction_index.reserve(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        rep.eigenvalues.push_back(generator_eigenvalue(p, n));
        rep.eigenfunction_index.push_back(n);
    }
    return rep;
}

ResolventSpectrumReport resolvent_spectrum(const GroupParams& p, Complex mu, std::size_t N,
                                           double eigenvalue_guard) {
    require_valid(p);
    if (mu.real() == 0.0) {
        throw DomainError("resolvent_spectrum: circle undefined for Re mu = 0");
    }
    ResolventSpectrumReport rep;
    rep.mu = mu;
    rep.circle_center = Complex{1.0 / (2.0 * mu.real()), 0.0};
    rep.circle_radius = 1.0 / (2.0 * std::abs(mu.real()));
    rep.points.reserve(N + 1);
    for (std::size_t n = 0; n <= N; ++n) {
        const Complex d = mu - generator_eigenvalue(p, n);
        if (std::abs(d) < eigenvalue_guard) {
            throw SpectrumError("resolvent_spectrum: mu hits the point spectrum");
        }
        rep.points.push_back(1.0 / d);
    }
    return rep;
}

NormBounds resolvent_norm_bounds(const GroupParams& p, Complex mu, std::size_t sample_count,
                                 const BlochGrid& grid, std::uint64_t seed) {
    require_valid(p);
    if (mu.real() == 0.0) {
        throw DomainError("resolvent_norm_bounds: bound undefined for Re mu = 0");
    }
    NormBounds nb;
    nb.upper = 1.0 / std::abs(mu.real());

    // Eigenvector ratios 1/|mu - i(c+kn)|; scan far enough past the nearest
    // eigen-ordinate that the tail is visibly decaying.
    const double nearest = (mu.imag() - p.c) / p.k;
    const std::size_t n_hi =
        static_cast<std::size_t>(std::max(24.0, 2.0 * std::fabs(nearest) + 24.0));
    for (std::size_t n = 0; n <= n_hi; ++n) {
        nb.lower = std::max(nb.lower, 1.0 / std::abs(mu - generator_eigenvalue(p, n)));
    }

    CorpusRng rng(seed);
    const std::size_t deg = std::max<std::size_t>(4, grid.n_theta / 4);
    for (std::size_t s = 0; s < sample_count; ++s) {
        const TaylorPolynomial f = random_polynomial(rng, std::min<std::size_t>(deg, 12));
        if (f.is_zero()) continue;
        const TaylorPolynomial rf = resolvent_diagonal(p, mu, f);
        const double nf = bloch_norm(f, grid).value;
        const double nrf = bloch_norm(rf, grid).value;
        if (nf > 0.0) nb.lower = std::max(nb.lower, nrf / nf);
    }
    return nb;
}

} // namespace oplab
