#pragma once

#include <cstdint>

#include "qkdpost/bitstring.hpp"

namespace qkdpost {

/// Fibonacci LFSR over GF(2) of degree k. The connection polynomial is
/// p(x) = x^k + c_{k-1} x^{k-1} + ... + c_1 x + c_0 with the coefficients
/// c_0..c_{k-1} stored LSB-first in `connection_poly` (the leading x^k term
/// is implicit). The recurrence is s_{t+k} = XOR of c_i * s_{t+i}, and the
/// output stream is s_0, s_1, s_2, ...
struct LfsrSpec {
    std::size_t degree = 0;
    BitString initial_state;    // length == degree, s_0..s_{k-1}
    BitString connection_poly;  // length == degree, c_0..c_{k-1}
};

/// Irreducibility of x^k + poly(x) over GF(2), `poly` holding c_0..c_{k-1}
/// as the low k bits. Supports k <= 63.
bool gf2_poly_irreducible(std::uint64_t poly, std::size_t degree);

/// Deterministic repair used when seeding from key material: force the
/// constant term to 1, then step the candidate (by 2, wrapping) until the
/// polynomial is irreducible.
std::uint64_t gf2_next_irreducible(std::uint64_t candidate, std::size_t degree);

/// Build an LfsrSpec from 2k key bits: first half the initial state, second
/// half the connection polynomial candidate. All-zero state is replaced by
/// 00..01; the polynomial is repaired to the next irreducible.
LfsrSpec lfsr_from_key(const BitString& key2k);

/// First n_out output bits. Throws on an all-zero initial state.
BitString lfsr_stream(const LfsrSpec& spec, std::size_t n_out);

}  // namespace qkdpost
