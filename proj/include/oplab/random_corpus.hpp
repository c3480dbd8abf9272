#pragma once

#include <cstdint>
#include <random>

#include "oplab/bloch.hpp"
#include "oplab/taylor.hpp"

namespace oplab {

/// Seeded generator for the random polynomial corpus. Uses mt19937_64 with
/// an explicit bits-to-double mapping so streams are identical across
/// standard library implementations.
class CorpusRng {
public:
    explicit CorpusRng(std::uint64_t seed) : eng_(seed) {}

    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    // Uniform on [-1, 1].
    double symmetric() { return 2.0 * uniform01() - 1.0; }

    Complex unit_square() { return Complex{symmetric(), symmetric()}; }

    // Uniform integer in [lo, hi].
    std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) {
        return lo + eng_() % (hi - lo + 1);
    }

private:
    std::mt19937_64 eng_;
};

/// Random polynomial with coefficients uniform on the complex unit square.
TaylorPolynomial random_polynomial(CorpusRng& rng, std::size_t degree);

/// Same, scaled to unit Bloch norm on the grid sized for its degree.
TaylorPolynomial random_unit_bloch_polynomial(CorpusRng& rng, std::size_t degree);

} // namespace oplab
