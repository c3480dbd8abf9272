#include "oplab/random_corpus.hpp"

namespace oplab {

TaylorPolynomial random_polynomial(CorpusRng& rng, std::size_t degree) {
    std::vector<Complex> c(degree + 1);
    for (Complex& x : c) x = rng.unit_square();
    // Keep the nominal degree so test capacities stay predictable.
    if (c.back() == Complex{0.0, 0.0}) c.back() = Complex{0.5, 0.0};
    return TaylorPolynomial{std::move(c)};
}

TaylorPolynomial random_unit_bloch_polynomial(CorpusRng& rng, std::size_t degree) {
    const TaylorPolynomial f = random_polynomial(rng, degree);
    const double norm = bloch_norm(f, BlochGrid::for_degree(f.degree())).value;
    if (norm == 0.0) return f;
    return (Complex{1.0 / norm, 0.0}) * f;
}

} // namespace oplab
