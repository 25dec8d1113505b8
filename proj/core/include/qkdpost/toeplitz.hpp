#pragma once

#include <cstddef>

#include "qkdpost/bitstring.hpp"
#include "qkdpost/lfsr.hpp"

namespace qkdpost {

/// rows x cols Toeplitz matrix over GF(2), constant along diagonals.
/// Fixed entry convention: entry(i, j) = diagonal_bits[i - j + cols - 1],
/// so diagonal_bits runs from the top-right corner (index 0) to the
/// bottom-left corner (index rows + cols - 2).
struct ToeplitzSpec {
    enum class Source { ExplicitRandom, LfsrGenerated };

    std::size_t rows = 0;
    std::size_t cols = 0;
    BitString diagonal_bits;  // length rows + cols - 1
    Source source = Source::ExplicitRandom;

    bool entry(std::size_t i, std::size_t j) const {
        return diagonal_bits.get(i - j + cols - 1);
    }
};

ToeplitzSpec make_toeplitz(std::size_t rows, std::size_t cols, BitString diagonal_bits,
                           ToeplitzSpec::Source source = ToeplitzSpec::Source::ExplicitRandom);

/// Product T * v over GF(2); v.size() must equal spec.cols. Linear in v.
BitString toeplitz_multiply(const ToeplitzSpec& spec, const BitString& v);

/// Krawczyk construction: a 2*rows-bit key seeds an LFSR (state + repaired
/// connection polynomial) whose first rows+cols-1 output bits form the
/// diagonal.
ToeplitzSpec toeplitz_from_lfsr(const BitString& key2k, std::size_t rows, std::size_t cols);

}  // namespace qkdpost
