#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "oplab/errors.hpp"

namespace oplab {

using Complex = std::complex<double>;

/// Analytic polynomial on the unit disc stored by Taylor coefficients,
/// coeffs[n] = f^(n)(0)/n!. Trailing zero coefficients are trimmed so that
/// degree() == coeffs().size() - 1 always holds; the zero polynomial is
/// stored as the single coefficient [0].
class TaylorPolynomial {
public:
    TaylorPolynomial() : coeffs_{Complex{0.0, 0.0}} {}

    explicit TaylorPolynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
        trim();
    }

    static TaylorPolynomial zero() { return TaylorPolynomial{}; }

    static TaylorPolynomial monomial(std::size_t degree, Complex scale = Complex{1.0, 0.0}) {
        std::vector<Complex> c(degree + 1, Complex{0.0, 0.0});
        c[degree] = scale;
        return TaylorPolynomial{std::move(c)};
    }

    const std::vector<Complex>& coeffs() const { return coeffs_; }

    std::size_t degree() const { return coeffs_.size() - 1; }

    // Coefficient of z^n; zero beyond the stored degree.
    Complex coeff(std::size_t n) const {
        return n < coeffs_.size() ? coeffs_[n] : Complex{0.0, 0.0};
    }

    bool is_zero() const {
        for (const Complex& c : coeffs_) {
            if (c != Complex{0.0, 0.0}) return false;
        }
        return true;
    }

    friend bool operator==(const TaylorPolynomial& a, const TaylorPolynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }

private:
    void trim() {
        if (coeffs_.empty()) coeffs_.push_back(Complex{0.0, 0.0});
        while (coeffs_.size() > 1 && coeffs_.back() == Complex{0.0, 0.0}) coeffs_.pop_back();
    }

    std::vector<Complex> coeffs_;
};

inline TaylorPolynomial operator+(const TaylorPolynomial& f, const TaylorPolynomial& g) {
    std::vector<Complex> c(std::max(f.degree(), g.degree()) + 1);
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = f.coeff(n) + g.coeff(n);
    return TaylorPolynomial{std::move(c)};
}

inline TaylorPolynomial operator-(const TaylorPolynomial& f, const TaylorPolynomial& g) {
    std::vector<Complex> c(std::max(f.degree(), g.degree()) + 1);
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = f.coeff(n) - g.coeff(n);
    return TaylorPolynomial{std::move(c)};
}

inline TaylorPolynomial operator*(Complex a, const TaylorPolynomial& f) {
    std::vector<Complex> c(f.coeffs());
    for (Complex& x : c) x *= a;
    return TaylorPolynomial{std::move(c)};
}

/// Horner evaluation of f at z.
inline Complex evaluate(const TaylorPolynomial& f, Complex z) {
    const auto& c = f.coeffs();
    Complex acc = c.back();
    for (std::size_t n = c.size() - 1; n-- > 0;) acc = acc * z + c[n];
    return acc;
}

/// d/dz: coeffs'[n] = (n+1) coeffs[n+1].
inline TaylorPolynomial differentiate(const TaylorPolynomial& f) {
    if (f.degree() == 0) return TaylorPolynomial::zero();
    std::vector<Complex> c(f.degree());
    for (std::size_t n = 0; n < c.size(); ++n) c[n] = static_cast<double>(n + 1) * f.coeff(n + 1);
    return TaylorPolynomial{std::move(c)};
}

/// M_z^m: shift coefficients up by m, i.e. f(z) -> z^m f(z).
inline TaylorPolynomial mz_power(const TaylorPolynomial& f, std::size_t m) {
    if (f.is_zero()) return TaylorPolynomial::zero();
    std::vector<Complex> c(f.degree() + 1 + m, Complex{0.0, 0.0});
    for (std::size_t n = 0; n <= f.degree(); ++n) c[n + m] = f.coeff(n);
    return TaylorPolynomial{std::move(c)};
}

/// Q^m: drop the first m coefficients; exact left inverse of mz_power.
inline TaylorPolynomial q_power(const TaylorPolynomial& f, std::size_t m) {
    if (m > f.degree()) return TaylorPolynomial::zero();
    std::vector<Complex> c(f.coeffs().begin() + static_cast<std::ptrdiff_t>(m), f.coeffs().end());
    return TaylorPolynomial{std::move(c)};
}

/// H_t: f(z) -> f(tz), a contraction in the Bloch norm for 0 <= t <= 1.
inline TaylorPolynomial dilate(const TaylorPolynomial& f, double t) {
    if (t < 0.0 || t > 1.0) throw ParamError("dilate: t must lie in [0, 1]");
    std::vector<Complex> c(f.coeffs());
    double tn = 1.0;
    for (std::size_t n = 1; n < c.size(); ++n) {
        tn *= t;
        c[n] *= tn;
    }
    return TaylorPolynomial{std::move(c)};
}

/// Splitting of f along Span(z^n)_{n<m} + M_z^m B: head holds the first m
/// coefficients (zero padded), tail = Q^m f, and
/// sum(head[n] z^n) + z^m tail(z) reconstructs f exactly.
struct Decomposition {
    std::vector<Complex> head;
    TaylorPolynomial tail;
};

inline Decomposition decompose(const TaylorPolynomial& f, std::size_t m) {
    Decomposition d;
    d.head.resize(m);
    for (std::size_t n = 0; n < m; ++n) d.head[n] = f.coeff(n);
    d.tail = q_power(f, m);
    return d;
}

/// Number of leading zero coefficients, i.e. the largest m with
/// f in ran(M_z^m); the zero polynomial reports 0.
inline std::size_t leading_zero_count(const TaylorPolynomial& f) {
    if (f.is_zero()) return 0;
    std::size_t m = 0;
    while (f.coeff(m) == Complex{0.0, 0.0}) ++m;
    return m;
}

} // namespace oplab
