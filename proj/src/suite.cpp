#include "oplab/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "oplab/bergman.hpp"
#include "oplab/bloch.hpp"
#include "oplab/disc_group.hpp"
#include "oplab/halfplane.hpp"
#include "oplab/quadrature.hpp"
#include "oplab/random_corpus.hpp"

namespace oplab {

namespace {

constexpr double kErrorSentinel = 9.0e99;

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

double max_coeff_dev(const TaylorPolynomial& a, const TaylorPolynomial& b) {
    double m = 0.0;
    const std::size_t n = std::max(a.degree(), b.degree());
    for (std::size_t j = 0; j <= n; ++j) m = std::max(m, std::abs(a.coeff(j) - b.coeff(j)));
    return m;
}

double max_rel_coeff_dev(const TaylorPolynomial& a, const TaylorPolynomial& ref) {
    double m = 0.0;
    const std::size_t n = std::max(a.degree(), ref.degree());
    for (std::size_t j = 0; j <= n; ++j) {
        const double scale = std::max(std::abs(ref.coeff(j)), 1e-300);
        m = std::max(m, std::abs(a.coeff(j) - ref.coeff(j)) / scale);
    }
    return m;
}

std::string render_params(const GroupParams& p) {
    std::ostringstream os;
    os << "c=" << p.c << ",k=" << p.k;
    return os.str();
}

std::string render_complex(Complex z) {
    std::ostringstream os;
    os << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
    return os.str();
}

struct Runner {
    const SuiteConfig& cfg;
    VerificationReport rep;

    double tol(const std::string& name, double fallback) const {
        const auto it = cfg.tolerances.find(name);
        return it == cfg.tolerances.end() ? fallback : it->second;
    }

    template <class Body>
    void check(const std::string& name, const std::string& inputs, double bound, Body&& body) {
        CheckRecord rec;
        rec.check_name = name;
        rec.inputs = inputs;
        rec.bound = bound;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            rec.measured_value = body();
            rec.pass = rec.measured_value <= bound;
        } catch (const std::exception& e) {
            rec.measured_value = kErrorSentinel;
            rec.pass = false;
            rec.inputs += std::string("; error: ") + e.what();
        }
        const auto t1 = std::chrono::steady_clock::now();
        rec.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        rep.checks.push_back(std::move(rec));
    }

    std::uint64_t seed_for(const std::string& family) const {
        return cfg.seed ^ fnv1a(family);
    }
};

// ---------------------------------------------------------------- analytic

void run_analytic_checks(Runner& r) {
    const SuiteConfig& cfg = r.cfg;
    if (cfg.params_grid.empty()) return;

    r.check("analytic/roundtrip_q_mz", "10 polys, m<=4", 0.0, [&] {
        CorpusRng rng(r.seed_for("analytic/roundtrip_q_mz"));
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const TaylorPolynomial f =
                random_polynomial(rng, rng.integer(0, cfg.degree_max));
            for (std::size_t m = 0; m <= 4; ++m) {
                worst = std::max(worst, max_coeff_dev(q_power(mz_power(f, m), m), f));
            }
        }
        return worst;
    });

    r.check("analytic/dilation_contraction", "deg<=20, t in {0,.25,.5,.75,1}", 1e-9, [&] {
        CorpusRng rng(r.seed_for("analytic/dilation_contraction"));
        double worst = -1.0;
        for (int i = 0; i < 8; ++i) {
            const TaylorPolynomial f = random_polynomial(rng, rng.integer(1, 20));
            const BlochGrid grid = BlochGrid::for_degree(f.degree());
            const double base = bloch_seminorm(f, grid).value;
            for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                worst = std::max(worst, bloch_seminorm(dilate(f, t), grid).value - base);
            }
        }
        return worst;
    });

    r.check("analytic/growth_bound_margin", "100 pairs, deg<=10, |z|<=0.95", 1e-8, [&] {
        CorpusRng rng(r.seed_for("analytic/growth_bound_margin"));
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const TaylorPolynomial f = random_polynomial(rng, rng.integer(0, 10));
            const BlochGrid grid = BlochGrid::for_degree(f.degree());
            for (int j = 0; j < 5; ++j) {
                const Complex z = std::polar(0.95 * rng.uniform01(),
                                             2.0 * std::numbers::pi * rng.uniform01());
                worst = std::max(worst, -growth_bound_margin(f, z, grid));
            }
        }
        return worst;
    });

    r.check("analytic/seminorm_homogeneity", "|alpha| scaling, rel", 1e-12, [&] {
        CorpusRng rng(r.seed_for("analytic/seminorm_homogeneity"));
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const TaylorPolynomial f = random_polynomial(rng, rng.integer(1, cfg.degree_max));
            const Complex alpha = 3.0 * rng.unit_square();
            const BlochGrid grid = BlochGrid::for_degree(f.degree());
            const double lhs = bloch_seminorm(alpha * f, grid).value;
            const double rhs = std::abs(alpha) * bloch_seminorm(f, grid).value;
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(rhs, 1e-300));
        }
        return worst;
    });

    r.check("analytic/derivative_linearity", "machine-exact coefficients", 1e-13, [&] {
        CorpusRng rng(r.seed_for("analytic/derivative_linearity"));
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const TaylorPolynomial f = random_polynomial(rng, rng.integer(0, cfg.degree_max));
            const TaylorPolynomial g = random_polynomial(rng, rng.integer(0, cfg.degree_max));
            const Complex a = rng.unit_square();
            const Complex b = rng.unit_square();
            const TaylorPolynomial lhs = differentiate(a * f + b * g);
            const TaylorPolynomial rhs = a * differentiate(f) + b * differentiate(g);
            worst = std::max(worst, max_coeff_dev(lhs, rhs));
        }
        return worst;
    });

    r.check("analytic/q_operator_ratio", "diagnostic sup ||Qf||/||f||", 1e6, [&] {
        CorpusRng rng(r.seed_for("analytic/q_operator_ratio"));
        double sup = 0.0;
        for (int i = 0; i < 12; ++i) {
            const TaylorPolynomial f = random_polynomial(rng, rng.integer(1, cfg.degree_max));
            const BlochGrid grid = BlochGrid::for_degree(f.degree());
            const double nf = bloch_norm(f, grid).value;
            const double nq = bloch_norm(q_power(f, 1), grid).value;
            if (nf > 0.0) sup = std::max(sup, nq / nf);
        }
        return sup;
    });

    r.check("analytic/mz_operator_ratio", "diagnostic sup ||z f||/||f||", 1e6, [&] {
        CorpusRng rng(r.seed_for("analytic/mz_operator_ratio"));
        double sup = 0.0;
        for (int i = 0; i < 12; ++i) {
            const TaylorPolynomial f = random_polynomial(rng, rng.integer(0, cfg.degree_max));
            const TaylorPolynomial zf = mz_power(f, 1);
            const BlochGrid grid = BlochGrid::for_degree(zf.degree());
            const double nf = bloch_norm(f, grid).value;
            const double nz = bloch_norm(zf, grid).value;
            if (nf > 0.0) sup = std::max(sup, nz / nf);
        }
        return sup;
    });
}

// -------------------------------------------------------------- quadrature

void run_quadrature_checks(Runner& r) {
    for (double beta : {-0.5, 0.0, 0.5, 1.0, 2.5}) {
        std::ostringstream os;
        os << "beta=" << beta << ", n=64";
        r.check("quadrature/moment_exactness", os.str(), 1e-12, [&] {
            const IntervalRule rule = make_interval_rule(64, beta);
            const std::size_t k_max =
                2 * rule.size() - 1 - static_cast<std::size_t>(std::max(0.0, std::ceil(beta)));
            double worst = 0.0;
            for (std::size_t k = 0; k <= k_max; ++k) {
                long double acc = 0.0L;
                for (std::size_t q = 0; q < rule.size(); ++q) {
                    acc += static_cast<long double>(rule.weights[q]) *
                           std::pow(static_cast<long double>(rule.nodes[q]),
                                    static_cast<long double>(k));
                }
                const double exact = 1.0 / (beta + static_cast<double>(k) + 1.0);
                worst = std::max(worst, std::abs(static_cast<double>(acc) - exact) / exact);
            }
            return worst;
        });
    }

    r.check("quadrature/ray_closed_form", "50 random (z,a,k), Re a > -0.9",
            r.tol("oracle_tol", 1e-9), [&] {
                CorpusRng rng(r.seed_for("quadrature/ray_closed_form"));
                double worst = 0.0;
                for (int i = 0; i < 50; ++i) {
                    const double re_a = -0.9 + 2.9 * rng.uniform01();
                    const double im_a = -3.0 + 6.0 * rng.uniform01();
                    const Complex a{re_a, im_a};
                    const std::size_t k = rng.integer(0, 16);
                    const Complex z = 1.2 * rng.unit_square();
                    const IntervalRule rule = make_interval_rule(64, re_a);
                    const Complex got = ray_integrate(TaylorPolynomial::monomial(k), z, a, rule);
                    Complex zk{1.0, 0.0};
                    for (std::size_t j = 0; j < k; ++j) zk *= z;
                    const Complex exact = zk / (a + static_cast<double>(k + 1));
                    worst = std::max(worst, std::abs(got - exact) /
                                                std::max(std::abs(exact), 1e-300));
                }
                return worst;
            });

    for (double alpha : r.cfg.alpha_grid) {
        std::ostringstream os;
        os << "alpha=" << alpha << ", n<=12";
        r.check("quadrature/beta_pairing_table", os.str(), r.tol("oracle_tol", 1e-9), [&] {
            const DiscRule rule = make_disc_rule(64, 32, alpha);
            double worst = 0.0;
            for (std::size_t n = 0; n <= 12; ++n) {
                const Complex got = disc_integrate(TaylorPolynomial::monomial(n),
                                                   TaylorPolynomial::monomial(n), rule);
                const double exact =
                    std::numbers::pi *
                    std::exp(std::lgamma(static_cast<double>(n) + 1.0) + std::lgamma(alpha + 1.0) -
                             std::lgamma(static_cast<double>(n) + alpha + 2.0));
                worst = std::max(worst, std::abs(got - exact) / exact);
                if (n >= 1) {
                    const Complex off = disc_integrate(TaylorPolynomial::monomial(n),
                                                       TaylorPolynomial::monomial(n - 1), rule);
                    worst = std::max(worst, std::abs(off) / std::numbers::pi);
                }
            }
            return worst;
        });

        r.check("quadrature/conjugate_symmetry", os.str(), 1e-12, [&] {
            CorpusRng rng(r.seed_for("quadrature/conjugate_symmetry"));
            const DiscRule rule = make_disc_rule(64, 40, alpha);
            double worst = 0.0;
            for (int i = 0; i < 10; ++i) {
                const TaylorPolynomial f = random_polynomial(rng, rng.integer(0, 12));
                const TaylorPolynomial g = random_polynomial(rng, rng.integer(0, 12));
                const Complex fg = disc_integrate(f, g, rule);
                const Complex gf = disc_integrate(g, f, rule);
                worst = std::max(worst, std::abs(fg - std::conj(gf)));
            }
            return worst;
        });
    }
}

// -------------------------------------------------------------- disc group

void run_disc_group_checks(Runner& r) {
    const SuiteConfig& cfg = r.cfg;

    for (const auto& [c, k] : cfg.params_grid) {
        const GroupParams p(c, k);
        const std::string ps = render_params(p);

        r.check("disc/isometry", ps + ", 50 unit-norm polys deg<=12, t in {0.1,1,pi}",
                r.tol("grid_tol", 1e-7), [&] {
                    CorpusRng rng(r.seed_for("disc/isometry" + ps));
                    double worst = 0.0;
                    for (int i = 0; i < 50; ++i) {
                        const TaylorPolynomial f =
                            random_unit_bloch_polynomial(rng, rng.integer(1, 12));
                        const BlochGrid grid = BlochGrid::for_degree(f.degree());
                        const double base = bloch_norm(f, grid).value;
                        for (double t : {0.1, 1.0, std::numbers::pi}) {
                            const double moved = bloch_norm(apply_group(p, t, f), grid).value;
                            worst = std::max(worst, std::abs(moved - base));
                        }
                    }
                    return worst;
                });

        r.check("disc/group_law", ps, 1e-13, [&] {
            CorpusRng rng(r.seed_for("disc/group_law" + ps));
            double worst = 0.0;
            for (int i = 0; i < 10; ++i) {
                const TaylorPolynomial f = random_polynomial(rng, rng.integer(0, cfg.degree_max));
                const double s = 4.0 * rng.symmetric();
                const double t = 4.0 * rng.symmetric();
                const TaylorPolynomial lhs = apply_group(p, s, apply_group(p, t, f));
                const TaylorPolynomial rhs = apply_group(p, s + t, f);
                worst = std::max(worst, max_coeff_dev(lhs, rhs));
            }
            return worst;
        });

        r.check("disc/strong_continuity_rate", ps + ", monomials n<=12", 1e-9, [&] {
            double worst = 0.0;
            for (std::size_t n = 0; n <= 12; ++n) {
                const TaylorPolynomial zn = TaylorPolynomial::monomial(n);
                const BlochGrid grid = BlochGrid::for_degree(n);
                const double norm_zn = bloch_norm(zn, grid).value;
                const double rate = std::fabs(p.c + p.k * static_cast<double>(n));
                for (double t : {0.5, 1e-2, 1e-4}) {
                    const double lhs = bloch_norm(apply_group(p, t, zn) - zn, grid).value;
                    const double factor = std::abs(std::polar(1.0, rate * t) - 1.0);
                    worst = std::max(worst, std::abs(lhs - factor * norm_zn));
                    // First-order smallness bound |c+kn| t ||z^n||.
                    worst = std::max(worst, lhs - rate * t * norm_zn);
                }
            }
            return worst;
        });

        r.check("disc/generator_consistency", ps + ", halving ratio in [1.8,2.2]", 0.2, [&] {
            CorpusRng rng(r.seed_for("disc/generator_consistency" + ps));
            double worst = 0.0;
            for (int i = 0; i < 6; ++i) {
                const TaylorPolynomial f = random_polynomial(rng, rng.integer(1, cfg.degree_max));
                const TaylorPolynomial gen = apply_generator(p, f);
                const double t = 1e-3;
                const auto err_at = [&](double tt) {
                    double m = 0.0;
                    const TaylorPolynomial diff = apply_group(p, tt, f) - f;
                    for (std::size_t n = 0; n <= f.degree(); ++n) {
                        m = std::max(m, std::abs(diff.coeff(n) / tt - gen.coeff(n)));
                    }
                    return m;
                };
                const double e1 = err_at(t);
                const double e2 = err_at(t / 2.0);
                if (e2 > 1e-12) worst = std::max(worst, std::abs(e1 / e2 - 2.0));
            }
            return worst;
        });

        r.check("disc/resolvent_identity", ps + ", both compositions", 1e-12, [&] {
            CorpusRng rng(r.seed_for("disc/resolvent_identity" + ps));
            double worst = 0.0;
            for (Complex mu : cfg.mu_grid) {
                for (int i = 0; i < 5; ++i) {
                    const TaylorPolynomial f =
                        random_polynomial(rng, rng.integer(0, cfg.degree_max));
                    const TaylorPolynomial rf = resolvent_diagonal(p, mu, f);
                    const TaylorPolynomial back = mu * rf - apply_generator(p, rf);
                    worst = std::max(worst, max_rel_coeff_dev(back, f));
                    const TaylorPolynomial fwd =
                        resolvent_diagonal(p, mu, mu * f - apply_generator(p, f));
                    worst = std::max(worst, max_rel_coeff_dev(fwd, f));
                }
            }
            return worst;
        });

        r.check("disc/affine_reduction", ps + ", 20 cases", 1e-12, [&] {
            CorpusRng rng(r.seed_for("disc/affine_reduction" + ps));
            const GroupParams base(0.0, 1.0);
            double worst = 0.0;
            for (int i = 0; i < 20; ++i) {
                const double re = (rng.uniform01() < 0.5 ? -1.0 : 1.0) *
                                  (0.3 + 1.7 * rng.uniform01());
                const Complex lambda{re, 3.0 * rng.symmetric()};
                const Complex mu = Complex{0.0, p.c} + p.k * lambda;
                const TaylorPolynomial f = random_polynomial(rng, rng.integer(0, cfg.degree_max));
                const TaylorPolynomial lhs = resolvent_diagonal(p, mu, f);
                const TaylorPolynomial rhs =
                    Complex{1.0 / p.k, 0.0} * resolvent_diagonal(base, lambda, f);
                worst = std::max(worst, max_rel_coeff_dev(lhs, rhs));
            }
            return worst;
        });

        r.check("disc/mz_range_invariance", ps + ", first m coefficients stay zero", 0.0, [&] {
            CorpusRng rng(r.seed_for("disc/mz_range_invariance" + ps));
            double worst = 0.0;
            for (int i = 0; i < 8; ++i) {
                const std::size_t m = rng.integer(1, 3);
                const TaylorPolynomial h = mz_power(random_polynomial(rng, 8), m);
                const Complex mu{1.0 + rng.uniform01(), rng.symmetric()};
                const TaylorPolynomial rd = resolvent_diagonal(p, mu, h);
                for (std::size_t n = 0; n < m; ++n) worst = std::max(worst, std::abs(rd.coeff(n)));
            }
            return worst;
        });

        r.check("disc/adjoint_involution", ps, 0.0, [&] {
            CorpusRng rng(r.seed_for("disc/adjoint_involution" + ps));
            double worst = 0.0;
            for (int i = 0; i < 8; ++i) {
                const TaylorPolynomial g = random_polynomial(rng, rng.integer(0, cfg.degree_max));
                const double t = 4.0 * rng.symmetric();
                worst = std::max(worst, max_coeff_dev(adjoint_apply(p, t, g), apply_group(p, -t, g)));
            }
            return worst;
        });
    }

    if (!cfg.params_grid.empty()) {
        r.check("disc/diagonal_integral_equivalence", "50 cases, m > Im(lambda)+0.5, 64 nodes",
                r.tol("oracle_tol", 1e-9), [&] {
                    CorpusRng rng(r.seed_for("disc/diagonal_integral_equivalence"));
                    double worst = 0.0;
                    for (int i = 0; i < 50; ++i) {
                        const auto& [c, k] = cfg.params_grid[static_cast<std::size_t>(i) %
                                                             cfg.params_grid.size()];
                        const GroupParams p(c, k);
                        const double re = (rng.uniform01() < 0.5 ? -1.0 : 1.0) *
                                          (0.3 + 1.7 * rng.uniform01());
                        const double im = 1.5 * rng.symmetric();
                        const Complex lambda{re, im};
                        const std::size_t m = static_cast<std::size_t>(
                            std::max(1.0, std::ceil(im + 0.51)));
                        const Complex mu = Complex{0.0, p.c} + p.k * lambda;
                        const TaylorPolynomial h =
                            mz_power(random_polynomial(rng, rng.integer(6, 12)), m);
                        const IntervalRule rule = make_interval_rule(
                            64, static_cast<double>(m) - lambda.imag() - 1.0);
                        const TaylorPolynomial via_int = resolvent_integral(p, mu, h, m, rule);
                        const TaylorPolynomial via_diag = resolvent_diagonal(p, mu, h);
                        worst = std::max(worst, max_rel_coeff_dev(via_int, via_diag));
                    }
                    return worst;
                });

        r.check("disc/cr_below_bound", "m in {1,2}, lambda in {1, 1+0.4i}", 1.05, [&] {
            const GroupParams p(0.0, 1.0);
            const TaylorPolynomial g0{{Complex{1.0, 0.0}, Complex{0.6, 0.0}, Complex{0.36, 0.0},
                                       Complex{0.216, 0.0}, Complex{0.1296, 0.0},
                                       Complex{0.07776, 0.0}}};
            double worst = 0.0;
            for (std::size_t m : {std::size_t{1}, std::size_t{2}}) {
                for (Complex lambda : {Complex{1.0, 0.0}, Complex{1.0, 0.4}}) {
                    const TaylorPolynomial h = mz_power(g0, m);
                    const BlochGrid grid = BlochGrid::for_degree(h.degree());
                    const double norm_g0 = bloch_norm(g0, grid).value;
                    const IntervalRule rule =
                        make_interval_rule(64, static_cast<double>(m) - lambda.imag() - 1.0);
                    const TaylorPolynomial full = resolvent_integral(p, lambda, h, m, rule);
                    const double expo = static_cast<double>(m) - lambda.imag();
                    for (double rr : {0.9, 0.99, 0.999}) {
                        const TaylorPolynomial cr =
                            truncated_resolvent_cr(p, lambda, h, m, rr, rule);
                        const double err = bloch_norm(full - cr, grid).value;
                        const double bound = (1.0 - std::pow(rr, expo)) / expo * norm_g0;
                        worst = std::max(worst, err / bound);
                    }
                }
            }
            return worst;
        });

        r.check("disc/cr_monotone", "error decreasing in r", 0.0, [&] {
            const GroupParams p(0.0, 1.0);
            const TaylorPolynomial g0{{Complex{1.0, 0.0}, Complex{0.6, 0.0}, Complex{0.36, 0.0},
                                       Complex{0.216, 0.0}, Complex{0.1296, 0.0},
                                       Complex{0.07776, 0.0}}};
            double worst = 0.0;
            for (std::size_t m : {std::size_t{1}, std::size_t{2}}) {
                for (Complex lambda : {Complex{1.0, 0.0}, Complex{1.0, 0.4}}) {
                    const TaylorPolynomial h = mz_power(g0, m);
                    const BlochGrid grid = BlochGrid::for_degree(h.degree());
                    const IntervalRule rule =
                        make_interval_rule(64, static_cast<double>(m) - lambda.imag() - 1.0);
                    const TaylorPolynomial full = resolvent_integral(p, lambda, h, m, rule);
                    double prev = -1.0;
                    for (double rr : {0.9, 0.99, 0.999}) {
                        const double err =
                            bloch_norm(full - truncated_resolvent_cr(p, lambda, h, m, rr, rule),
                                       grid)
                                .value;
                        if (prev >= 0.0) worst = std::max(worst, err - prev);
                        prev = err;
                    }
                }
            }
            return worst;
        });
    }

    for (std::size_t mi = 0; mi < cfg.mu_grid.size(); ++mi) {
        const Complex mu = cfg.mu_grid[mi];
        if (mu.real() == 0.0 || cfg.params_grid.empty()) continue;
        const auto& [c, k] = cfg.params_grid[mi % cfg.params_grid.size()];
        const GroupParams p(c, k);
        const std::string in = render_params(p) + ", mu=" + render_complex(mu);

        r.check("disc/resolvent_circle", in, 1e-12, [&] {
            const ResolventSpectrumReport rep = resolvent_spectrum(p, mu, 40);
            double worst = 0.0;
            for (const Complex& pt : rep.points) {
                worst = std::max(worst,
                                 std::fabs(std::abs(pt - rep.circle_center) - rep.circle_radius));
                // The circle passes through the origin, so no point may
                // leave the disc of radius 2 * circle_radius.
                worst = std::max(worst, std::abs(pt) - 2.0 * rep.circle_radius);
            }
            return worst;
        });

        r.check("disc/resolvent_norm_bounds", in + ", lower <= upper", 1e-8, [&] {
            const NormBounds nb = resolvent_norm_bounds(p, mu, 4, BlochGrid::for_degree(12),
                                                        r.seed_for("disc/norm_bounds"));
            return nb.lower - nb.upper;
        });

        r.check("disc/compactness_tail", in + ", eigen ratios past N(mu)", 1e-3, [&] {
            const double offset = std::abs(mu - Complex{0.0, p.c});
            const std::size_t n_start =
                static_cast<std::size_t>((1.0 / 1e-3 + offset) / std::fabs(p.k)) + 1;
            double worst = 0.0;
            for (std::size_t n = n_start; n < n_start + 20; ++n) {
                worst = std::max(worst, 1.0 / std::abs(mu - generator_eigenvalue(p, n)));
            }
            return worst;
        });

        r.check("disc/finite_rank_truncation", in + ", truncation error decreasing", 0.0, [&] {
            CorpusRng rng(r.seed_for("disc/finite_rank_truncation"));
            std::vector<TaylorPolynomial> corpus;
            for (int i = 0; i < 6; ++i) corpus.push_back(random_polynomial(rng, 12));
            const BlochGrid grid = BlochGrid::for_degree(12);
            double prev = -1.0;
            double worst = 0.0;
            for (std::size_t rank : {2u, 5u, 9u, 12u}) {
                double e = 0.0;
                for (const TaylorPolynomial& f : corpus) {
                    const TaylorPolynomial rf = resolvent_diagonal(p, mu, f);
                    std::vector<Complex> kept(rf.coeffs().begin(),
                                              rf.coeffs().begin() +
                                                  static_cast<std::ptrdiff_t>(std::min(
                                                      rf.degree() + 1, rank + 1)));
                    const TaylorPolynomial trunc{std::move(kept)};
                    const double nf = bloch_norm(f, grid).value;
                    e = std::max(e, bloch_norm(rf - trunc, grid).value / nf);
                }
                if (prev >= 0.0) worst = std::max(worst, e - prev);
                prev = e;
            }
            return worst;
        });
    }
}

// -------------------------------------------------------------- half-plane

void run_halfplane_checks(Runner& r) {
    const SuiteConfig& cfg = r.cfg;
    if (cfg.gamma_grid.empty()) return;

    r.check("half/conjugation_identity", "10x10 probe grid, t in {0.1,0.7,pi/4,pi}", 1e-12, [&] {
        double worst = 0.0;
        for (double t : {0.1, 0.7, std::numbers::pi / 4.0, std::numbers::pi}) {
            for (int ix = 0; ix < 10; ++ix) {
                for (int iy = 0; iy < 10; ++iy) {
                    const Complex z{-2.0 + 4.0 * ix / 9.0, 0.2 + 2.8 * iy / 9.0};
                    worst = std::max(worst, conjugation_identity_residual(t, z));
                }
            }
        }
        return worst;
    });

    r.check("half/mobius_group_law", "rotation matrices", 1e-14, [&] {
        double worst = 0.0;
        for (double s : {0.3, 1.1, -0.7, 2.4}) {
            for (double t : {0.5, -1.3, 0.9, 3.0}) {
                const MobiusMap lhs = MobiusMap::rotation(s).compose(MobiusMap::rotation(t));
                const MobiusMap rhs = MobiusMap::rotation(s + t);
                worst = std::max({worst, std::fabs(lhs.a - rhs.a), std::fabs(lhs.b - rhs.b),
                                  std::fabs(lhs.c - rhs.c), std::fabs(lhs.d - rhs.d)});
            }
        }
        return worst;
    });

    r.check("half/cayley_roundtrip", "100 points per domain", 1e-13, [&] {
        CorpusRng rng(r.seed_for("half/cayley_roundtrip"));
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const Complex z = std::polar(0.98 * rng.uniform01(),
                                         2.0 * std::numbers::pi * rng.uniform01());
            worst = std::max(worst, std::abs(cayley_inv(cayley(z)) - z));
            const Complex w{3.0 * rng.symmetric(), 0.05 + 4.0 * rng.uniform01()};
            worst = std::max(worst, std::abs(cayley(cayley_inv(w)) - w));
        }
        return worst;
    });

    const std::vector<Complex> probes{{1.0, 1.0}, {0.0, 2.0},  {0.5, 1.5}, {1.5, 0.7},
                                      {0.3, 2.0}, {-0.4, 1.2}, {2.0, 0.5}, {-1.0, 2.5},
                                      {0.8, 0.6}, {-0.2, 0.9}, {1.2, 2.2}, {0.1, 0.4},
                                      {2.5, 1.5}, {-1.7, 0.8}, {0.6, 3.2}, {1.9, 2.8},
                                      {-0.9, 0.5}, {0.2, 1.1}, {1.4, 1.9}, {-1.2, 1.6}};

    for (double gamma : cfg.gamma_grid) {
        const WeightParam wp(gamma);
        std::ostringstream gs;
        gs << "gamma=" << gamma;

        r.check("half/eigen_residual", gs.str() + ", n<=8, 20 probes", 1e-9, [&] {
            double worst = 0.0;
            for (std::size_t n = 0; n <= 8; ++n) {
                const PointwiseFunction en = eigenfunction(wp, n);
                const Complex expected = Complex{0.0, -2.0 * (gamma + static_cast<double>(n))};
                for (const Complex& w : probes) {
                    const Complex ew = en.value(w);
                    if (std::abs(ew) < 1e-14) continue;
                    worst = std::max(worst,
                                     std::abs(delta_apply(wp, en, w) - expected * ew) /
                                         std::abs(ew));
                }
            }
            return worst;
        });

        r.check("half/generator_derivative", gs.str() + ", halving ratio in [1.8,2.2]", 0.2, [&] {
            // h(w) = 1/(w + 2i), analytic on the closed upper half-plane.
            PointwiseFunction h;
            h.domain_tag = DomainTag::half_plane;
            h.value_at = [](Complex w) { return 1.0 / (w + Complex{0.0, 2.0}); };
            h.derivative_at = [](Complex w) {
                const Complex d = w + Complex{0.0, 2.0};
                return -1.0 / (d * d);
            };
            double worst = 0.0;
            for (std::size_t i = 0; i < 6; ++i) {
                const Complex w = probes[i];
                const Complex dh = delta_apply(wp, h, w);
                const auto err_at = [&](double t) {
                    const Complex st =
                        weighted_composition(MobiusMap::rotation(t), wp, h).value(w);
                    return std::abs((st - h.value(w)) / t - dh);
                };
                const double e1 = err_at(1e-3);
                const double e2 = err_at(5e-4);
                if (e2 > 1e-12) worst = std::max(worst, std::abs(e1 / e2 - 2.0));
            }
            return worst;
        });

        const bool integral_gamma = gamma == std::floor(gamma);
        const double window = integral_gamma ? 0.5 : r.tol("branch_window", 0.1);
        std::ostringstream ws;
        ws << gs.str() << ", |t|<=" << window;
        r.check("half/similarity", ws.str(), 1e-8, [&] {
            PointwiseFunction f2;
            f2.domain_tag = DomainTag::half_plane;
            f2.value_at = [](Complex w) { return 1.0 / (w + Complex{0.0, 2.0}); };
            f2.derivative_at = [](Complex w) {
                const Complex d = w + Complex{0.0, 2.0};
                return -1.0 / (d * d);
            };
            const std::vector<PointwiseFunction> fs{
                PointwiseFunction::constant(Complex{1.0, 0.0}, DomainTag::half_plane), f2};
            double worst = 0.0;
            for (double t : {window, -window, window / 2.0, -window / 4.0}) {
                for (const PointwiseFunction& f : fs) {
                    for (std::size_t i = 0; i < 6; ++i) {
                        worst = std::max(worst, similarity_residual(t, wp, f, probes[i]));
                    }
                }
            }
            return worst;
        });

        r.check("half/delta_resolvent_residual", gs.str() + ", defining equation",
                r.tol("residual_tol", 1e-6), [&] {
                    const Complex mu{1.0, 0.3};
                    const double im_a = (mu.imag() + 2.0 * gamma) / 2.0;
                    const IntervalRule rule = make_interval_rule(64, im_a - 1.0);
                    PointwiseFunction h;
                    {
                        const PointwiseFunction e0 = eigenfunction(wp, 0);
                        const PointwiseFunction e1 = eigenfunction(wp, 1);
                        const PointwiseFunction e2 = eigenfunction(wp, 2);
                        h.domain_tag = DomainTag::half_plane;
                        h.value_at = [e0, e1, e2](Complex w) {
                            return e0.value(w) + 0.5 * e1.value(w) + 0.3 * e2.value(w);
                        };
                        h.derivative_at = [e0, e1, e2](Complex w) {
                            return e0.derivative(w) + 0.5 * e1.derivative(w) +
                                   0.3 * e2.derivative(w);
                        };
                    }
                    PointwiseFunction rh;
                    rh.domain_tag = DomainTag::half_plane;
                    rh.value_at = [&, mu](Complex z) {
                        return delta_resolvent(wp, mu, h, z, rule);
                    };
                    const std::vector<Complex> region_probes{
                        {0.4, 0.4}, {0.8, 0.9}, {1.2, 0.6}, {0.5, 1.5}, {1.0, 0.3},
                        {0.3, 0.5}, {0.9, 1.4}, {1.4, 0.4}, {0.6, 0.7}, {1.1, 1.1}};
                    double worst = 0.0;
                    for (const Complex& z : region_probes) {
                        const Complex rv = rh.value(z);
                        const Complex drv = delta_apply(wp, rh, z);
                        const Complex res = mu * rv - drv - h.value(z);
                        worst = std::max(worst,
                                         std::abs(res) / (1.0 + std::abs(h.value(z))));
                    }
                    return worst;
                });

        r.check("half/delta_resolvent_conjugated", gs.str() + ", diagonal route",
                r.tol("residual_tol", 1e-6), [&] {
                    const Complex mu{-1.2, 0.7};
                    const double im_a = (mu.imag() + 2.0 * gamma) / 2.0;
                    const IntervalRule rule = make_interval_rule(64, im_a - 1.0);
                    const TaylorPolynomial g{{Complex{0.3, 0.1}, Complex{0.5, 0.0},
                                              Complex{0.0, 0.2}, Complex{0.25, -0.15}}};
                    const PointwiseFunction h =
                        s_psi_inv(wp, PointwiseFunction::from_taylor(g));
                    const GroupParams disc_params(-2.0 * gamma, -2.0);
                    const PointwiseFunction conjugated = s_psi_inv(
                        wp, PointwiseFunction::from_taylor(resolvent_diagonal(disc_params, mu, g)));
                    const std::vector<Complex> region_probes{
                        {0.4, 0.4}, {0.8, 0.9}, {1.2, 0.6}, {0.5, 1.5}, {1.0, 0.3}};
                    double worst = 0.0;
                    for (const Complex& z : region_probes) {
                        const Complex direct = delta_resolvent(wp, mu, h, z, rule);
                        const Complex expected = conjugated.value(z);
                        worst = std::max(worst, std::abs(direct - expected) /
                                                    std::max(std::abs(expected), 1e-12));
                    }
                    return worst;
                });
    }
}

// ----------------------------------------------------------------- bergman

void run_bergman_checks(Runner& r) {
    const SuiteConfig& cfg = r.cfg;
    if (cfg.alpha_grid.empty() || cfg.params_grid.empty()) return;

    for (double alpha : cfg.alpha_grid) {
        const PairingConfig pc = PairingConfig::for_degree(alpha, std::max<std::size_t>(
                                                                      cfg.degree_max, 12));
        std::ostringstream as;
        as << "alpha=" << alpha;

        r.check("bergman/sesquilinearity", as.str(), 1e-11, [&] {
            CorpusRng rng(r.seed_for("bergman/sesquilinearity"));
            double worst = 0.0;
            for (int i = 0; i < 8; ++i) {
                const TaylorPolynomial f = random_polynomial(rng, rng.integer(0, 10));
                const TaylorPolynomial h = random_polynomial(rng, rng.integer(0, 10));
                const TaylorPolynomial g = random_polynomial(rng, rng.integer(0, 10));
                const Complex a = rng.unit_square();
                const Complex b = rng.unit_square();
                const Complex lhs = bergman_pairing(a * f + b * h, g, pc);
                const Complex rhs =
                    a * bergman_pairing(f, g, pc) + b * bergman_pairing(h, g, pc);
                worst = std::max(worst, std::abs(lhs - rhs));
                const Complex lhs2 = bergman_pairing(f, a * g, pc);
                const Complex rhs2 = std::conj(a) * bergman_pairing(f, g, pc);
                worst = std::max(worst, std::abs(lhs2 - rhs2));
            }
            return worst;
        });

        r.check("bergman/adjoint_pairing", as.str() + ", 50 cases",
                r.tol("oracle_tol", 1e-9), [&] {
                    CorpusRng rng(r.seed_for("bergman/adjoint_pairing"));
                    double worst = 0.0;
                    for (int i = 0; i < 50; ++i) {
                        const auto& [c, k] = cfg.params_grid[static_cast<std::size_t>(i) %
                                                             cfg.params_grid.size()];
                        const GroupParams p(c, k);
                        const TaylorPolynomial f = random_polynomial(rng, rng.integer(0, 10));
                        const TaylorPolynomial g = random_polynomial(rng, rng.integer(0, 10));
                        const double t = 4.0 * rng.symmetric();
                        const double residual = adjoint_pairing_residual(p, t, f, g, pc);
                        const double scale = 1.0 + std::abs(bergman_pairing(g, f, pc));
                        worst = std::max(worst, residual / scale);
                    }
                    return worst;
                });

        r.check("bergman/monomial_pairing_isometry", as.str(), 1e-14, [&] {
            const GroupParams p = GroupParams(cfg.params_grid.front().first,
                                              cfg.params_grid.front().second);
            double worst = 0.0;
            for (std::size_t n = 0; n <= 10; ++n) {
                const TaylorPolynomial zn = TaylorPolynomial::monomial(n);
                const double base = std::abs(bergman_pairing(zn, zn, pc));
                for (double t : {0.7, 2.1}) {
                    const TaylorPolynomial moved = apply_group(p, t, zn);
                    const double after = std::abs(bergman_pairing(moved, moved, pc));
                    worst = std::max(worst, std::abs(after - base) / base);
                }
            }
            return worst;
        });

        r.check("bergman/growth_ratio_bounded", as.str() + ", diagnostic", 1e6, [&] {
            CorpusRng rng(r.seed_for("bergman/growth_ratio_bounded"));
            double sup = 0.0;
            for (int i = 0; i < 10; ++i) {
                const TaylorPolynomial f = random_polynomial(rng, rng.integer(0, 10));
                if (f.is_zero()) continue;
                for (double pnorm : {1.0, 2.0}) {
                    for (int j = 0; j < 4; ++j) {
                        const Complex z = std::polar(0.95 * rng.uniform01(),
                                                     2.0 * std::numbers::pi * rng.uniform01());
                        sup = std::max(sup, bergman_growth_ratio(f, z, pnorm, pc));
                    }
                }
            }
            return sup;
        });
    }
}

} // namespace

SuiteConfig SuiteConfig::defaults() {
    SuiteConfig cfg;
    cfg.params_grid = {{0.0, 1.0}, {1.0, 2.0}, {0.5, -1.0}, {-2.0, -2.0}};
    cfg.mu_grid = {Complex{1.0, 0.0}, Complex{2.0, 0.5}, Complex{-1.5, 2.0}, Complex{0.7, -1.3}};
    cfg.gamma_grid = {0.5, 1.0, 2.0};
    cfg.alpha_grid = {0.0, 1.0, 2.5};
    cfg.degree_max = 12;
    cfg.seed = 20240817;
    cfg.tolerances = {{"grid_tol", 1e-7},
                      {"oracle_tol", 1e-9},
                      {"residual_tol", 1e-6},
                      {"branch_window", 0.1}};
    return cfg;
}

void SuiteConfig::validate() const {
    for (const auto& [c, k] : params_grid) {
        (void)c;
        if (k == 0.0) throw ConfigError("SuiteConfig: params_grid entry with k = 0");
    }
    for (double a : alpha_grid) {
        if (!(a > -1.0)) throw ConfigError("SuiteConfig: alpha_grid entry must exceed -1");
    }
    for (double g : gamma_grid) {
        if (!(g > 0.0)) throw ConfigError("SuiteConfig: gamma_grid entry must be positive");
    }
    for (const auto& [name, value] : tolerances) {
        if (!(value > 0.0)) throw ConfigError("SuiteConfig: tolerance " + name + " must be positive");
    }
    if (degree_max == 0) throw ConfigError("SuiteConfig: degree_max must be positive");
}

SuiteConfig SuiteConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("SuiteConfig: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("SuiteConfig: invalid JSON: ") + e.what());
    }

    SuiteConfig cfg = defaults();
    try {
        if (j.contains("params_grid")) {
            cfg.params_grid.clear();
            for (const auto& pair : j["params_grid"]) {
                cfg.params_grid.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
            }
        }
        if (j.contains("mu_grid")) {
            cfg.mu_grid.clear();
            for (const auto& pair : j["mu_grid"]) {
                cfg.mu_grid.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
            }
        }
        if (j.contains("gamma_grid")) cfg.gamma_grid = j["gamma_grid"].get<std::vector<double>>();
        if (j.contains("alpha_grid")) cfg.alpha_grid = j["alpha_grid"].get<std::vector<double>>();
        if (j.contains("degree_max")) cfg.degree_max = j["degree_max"].get<std::size_t>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("tolerances")) {
            for (const auto& [key, value] : j["tolerances"].items()) {
                cfg.tolerances[key] = value.get<double>();
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("SuiteConfig: bad field: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

std::string SuiteConfig::to_json() const {
    nlohmann::ordered_json j;
    nlohmann::ordered_json params = nlohmann::ordered_json::array();
    for (const auto& [c, k] : params_grid) params.push_back({c, k});
    j["params_grid"] = std::move(params);
    nlohmann::ordered_json mus = nlohmann::ordered_json::array();
    for (const Complex& mu : mu_grid) mus.push_back({mu.real(), mu.imag()});
    j["mu_grid"] = std::move(mus);
    j["gamma_grid"] = gamma_grid;
    j["alpha_grid"] = alpha_grid;
    j["degree_max"] = degree_max;
    j["seed"] = seed;
    j["tolerances"] = tolerances;
    return j.dump(2);
}

VerificationReport run_suite(const SuiteConfig& cfg) {
    cfg.validate();
    Runner runner{cfg, {}};
    runner.rep.seed = cfg.seed;
    runner.rep.paper_flags = standard_paper_flags();

    const bool all_empty = cfg.params_grid.empty() && cfg.mu_grid.empty() &&
                           cfg.gamma_grid.empty() && cfg.alpha_grid.empty();
    if (all_empty) return runner.rep;

    run_analytic_checks(runner);
    run_quadrature_checks(runner);
    run_disc_group_checks(runner);
    run_halfplane_checks(runner);
    run_bergman_checks(runner);
    return runner.rep;
}

} // namespace oplab
