#include "oplab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oplab/errors.hpp"

namespace oplab {

namespace {

// Recurrence coefficients of the monic Jacobi polynomials for the weight
// (1-x)^A (1+x)^B on (-1,1):  pi_{k+1} = (x - a_k) pi_k - b_k pi_{k-1},
// b_0 = mu_0 = 2^{A+B+1} B(A+1, B+1).
struct JacobiRecurrence {
    std::vector<long double> a;
    std::vector<long double> b;
    long double mu0;
};

JacobiRecurrence jacobi_recurrence(std::size_t n, long double A, long double B) {
    JacobiRecurrence rec;
    rec.a.resize(n);
    rec.b.resize(n);
    rec.mu0 = std::exp(static_cast<long double>((A + B + 1) * std::numbers::ln2_v<long double>) +
                       std::lgamma(A + 1) + std::lgamma(B + 1) - std::lgamma(A + B + 2));
    for (std::size_t k = 0; k < n; ++k) {
        const long double kk = static_cast<long double>(k);
        if (k == 0) {
            rec.a[0] = (B - A) / (A + B + 2);
            rec.b[0] = rec.mu0;
        } else {
            const long double s = 2 * kk + A + B;
            rec.a[k] = (B * B - A * A) / (s * (s + 2));
            rec.b[k] = 4 * kk * (kk + A) * (kk + B) * (kk + A + B) /
                       (s * s * (s + 1) * (s - 1));
        }
    }
    return rec;
}

// Eigenvalues of the symmetric tridiagonal matrix with diagonal d and
// off-diagonal e (implicit-shift QL). d is overwritten with the eigenvalues.
void symmetric_tridiagonal_eigenvalues(std::vector<long double>& d, std::vector<long double>& e) {
    const std::size_t n = d.size();
    e.push_back(0.0L);
    for (std::size_t l = 0; l < n; ++l) {
        std::size_t iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const long double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= 1e-19L * dd) break;
            }
            if (m != l) {
                if (++iter > 60) throw ConfigError("quadrature: eigenvalue iteration stalled");
                long double g = (d[l + 1] - d[l]) / (2 * e[l]);
                long double r = std::hypot(g, 1.0L);
                g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::fabs(r) : -std::fabs(r)));
                long double s = 1.0L, c = 1.0L, p = 0.0L;
                bool underflow = false;
                for (std::size_t i = m; i-- > l;) {
                    long double f = s * e[i];
                    const long double bb = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0L) {
                        d[i + 1] -= p;
                        e[m] = 0.0L;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2 * c * bb;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - bb;
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0L;
            }
        } while (m != l);
    }
    e.pop_back();
    std::sort(d.begin(), d.end());
}

// Gauss rule on (-1,1) for the weight (1-x)^A (1+x)^B: Golub-Welsch nodes,
// weights from the Christoffel function 1/sum_j ptilde_j(x)^2 (orthonormal
// recurrence; avoids eigenvectors entirely).
void gauss_jacobi_reference(std::size_t n, long double A, long double B,
                            std::vector<long double>& x, std::vector<long double>& w) {
    const JacobiRecurrence rec = jacobi_recurrence(n, A, B);
    x = rec.a;
    std::vector<long double> e(n > 0 ? n - 1 : 0);
    for (std::size_t k = 1; k < n; ++k) e[k - 1] = std::sqrt(rec.b[k]);
    symmetric_tridiagonal_eigenvalues(x, e);

    w.assign(n, 0.0L);
    std::vector<long double> sb(n);
    for (std::size_t k = 0; k < n; ++k) sb[k] = std::sqrt(rec.b[k]);
    for (std::size_t i = 0; i < n; ++i) {
        // Orthonormal values ptilde_j(x_i), j = 0..n-1.
        long double pm = 0.0L;
        long double pc = 1.0L / std::sqrt(rec.mu0);
        long double sum = pc * pc;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            const long double pn = ((x[i] - rec.a[j]) * pc - (j > 0 ? sb[j] * pm : 0.0L)) / sb[j + 1];
            pm = pc;
            pc = pn;
            sum += pc * pc;
        }
        w[i] = 1.0L / sum;
    }
}

} // namespace

IntervalRule make_interval_rule(std::size_t n, double beta) {
    if (n < 1) throw ParamError("make_interval_rule: need at least one node");
    if (!(beta > -1.0)) throw DivergenceError("make_interval_rule: weight t^beta needs beta > -1");

    // t = (1+x)/2 maps the weight (1+x)^beta on (-1,1) to t^beta on (0,1):
    // int_0^1 t^beta g dt = 2^{-beta-1} int_{-1}^{1} (1+x)^beta g((1+x)/2) dx.
    std::vector<long double> x, w;
    gauss_jacobi_reference(n, 0.0L, static_cast<long double>(beta), x, w);

    IntervalRule rule;
    rule.jacobi_exponent = beta;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const long double scale = std::exp(-static_cast<long double>(beta + 1) *
                                       std::numbers::ln2_v<long double>);
    for (std::size_t i = 0; i < n; ++i) {
        rule.nodes[i] = static_cast<double>((1.0L + x[i]) / 2.0L);
        rule.weights[i] = static_cast<double>(w[i] * scale);
    }
    return rule;
}

Complex ray_integrate(const TaylorPolynomial& h, Complex z, Complex a, const IntervalRule& rule) {
    if (!(a.real() > -1.0)) throw DivergenceError("ray_integrate: Re a must exceed -1");
    if (std::abs(a.real() - rule.jacobi_exponent) > 1e-12) {
        throw ParamError("ray_integrate: rule.jacobi_exponent must equal Re a");
    }

    // Subtraction order of the Taylor head handled by closed-form moments.
    const std::size_t J = 6;
    const double s = a.imag();

    // Head: first J Taylor slots against the closed-form moments.
    Complex head{0.0, 0.0};
    Complex zj{1.0, 0.0};
    for (std::size_t j = 0; j < J && j <= h.degree(); ++j) {
        head += h.coeff(j) * zj / (a + static_cast<double>(j + 1));
        zj *= z;
    }
    if (h.degree() < J) return head;

    // Tail: rho(t) = sum_{j>=J} h_j (tz)^j sampled at the nodes; computed as
    // (tz)^J * Horner(tail coefficients) so no cancellation occurs near t=0.
    const TaylorPolynomial tail = q_power(h, J);
    Complex acc{0.0, 0.0};
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const double t = rule.nodes[q];
        const Complex tz = t * z;
        const Complex osc = std::polar(1.0, s * std::log(t));
        Complex tzJ{1.0, 0.0};
        for (std::size_t j = 0; j < J; ++j) tzJ *= tz;
        acc += rule.weights[q] * osc * tzJ * evaluate(tail, tz);
    }
    return head + acc;
}

DiscRule make_disc_rule(std::size_t n_radial, std::size_t angular_count, double alpha) {
    if (n_radial < 1 || angular_count < 1) {
        throw ParamError("make_disc_rule: node counts must be positive");
    }
    if (!(alpha > -1.0)) throw DivergenceError("make_disc_rule: weight needs alpha > -1");

    // u = r^2 turns int_0^1 g(r) (1-r^2)^alpha r dr into
    // (1/2) int_0^1 g(sqrt(u)) (1-u)^alpha du; the u-rule is Gauss-Jacobi
    // for the weight (1-u)^alpha.
    std::vector<long double> x, w;
    gauss_jacobi_reference(n_radial, static_cast<long double>(alpha), 0.0L, x, w);

    DiscRule rule;
    rule.alpha = alpha;
    rule.angular_count = angular_count;
    rule.radial_nodes.resize(n_radial);
    rule.radial_weights.resize(n_radial);
    const long double scale = 0.5L * std::exp(-static_cast<long double>(alpha + 1) *
                                              std::numbers::ln2_v<long double>);
    for (std::size_t i = 0; i < n_radial; ++i) {
        const long double u = (1.0L + x[i]) / 2.0L;
        rule.radial_nodes[i] = static_cast<double>(std::sqrt(u));
        rule.radial_weights[i] = static_cast<double>(w[i] * scale);
    }
    return rule;
}

Complex disc_integrate(const TaylorPolynomial& f, const TaylorPolynomial& g, const DiscRule& rule) {
    if (rule.angular_count < f.degree() + g.degree() + 1) {
        throw AliasingError("disc_integrate: angular_count below deg f + deg g + 1");
    }
    const std::size_t M = rule.angular_count;
    const double angular_weight = 2.0 * std::numbers::pi / static_cast<double>(M);

    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < rule.radial_nodes.size(); ++i) {
        const double r = rule.radial_nodes[i];
        Complex ring{0.0, 0.0};
        for (std::size_t jt = 0; jt < M; ++jt) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(jt) /
                                 static_cast<double>(M);
            const Complex zq = std::polar(r, theta);
            ring += evaluate(f, zq) * std::conj(evaluate(g, zq));
        }
        acc += rule.radial_weights[i] * angular_weight * ring;
    }
    return acc;
}

} // namespace oplab
