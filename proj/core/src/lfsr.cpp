#include "qkdpost/lfsr.hpp"

#include <bit>
#include <stdexcept>

namespace qkdpost {

namespace {

constexpr std::uint64_t bit_at(std::size_t i) { return std::uint64_t{1} << i; }

// residues are polynomials of degree < k, p(x) = x^k + c(x)
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::size_t k) {
    const std::uint64_t mask = (k == 64) ? ~std::uint64_t{0} : bit_at(k) - 1;
    std::uint64_t res = 0;
    while (b) {
        if (b & 1u) res ^= a;
        b >>= 1;
        const bool hi = a >> (k - 1) & 1u;
        a = (a << 1) & mask;
        if (hi) a ^= c;
    }
    return res;
}

int poly_deg(std::uint64_t p) { return 63 - std::countl_zero(p); }

std::uint64_t poly_gcd(std::uint64_t a, std::uint64_t b) {
    while (b) {
        while (a && poly_deg(a) >= poly_deg(b)) a ^= b << (poly_deg(a) - poly_deg(b));
        std::swap(a, b);
    }
    return a;
}

}  // namespace

bool gf2_poly_irreducible(std::uint64_t poly, std::size_t degree) {
    if (degree == 0 || degree > 63) throw std::invalid_argument("gf2_poly_irreducible: degree");
    const std::uint64_t mask = bit_at(degree) - 1;
    poly &= mask;
    if ((poly & 1u) == 0) return false;  // divisible by x
    if (degree == 1) return true;        // x + 1

    const std::uint64_t x_red = 2;  // degree >= 2, so x is already reduced
    // x^(2^degree) == x (mod p)
    std::uint64_t t = x_red;
    for (std::size_t i = 0; i < degree; ++i) t = mulmod(t, t, poly, degree);
    if (t != x_red) return false;

    // gcd(x^(2^(degree/q)) - x, p) == 1 for every prime q | degree
    const std::uint64_t full = bit_at(degree) | poly;
    std::size_t rem = degree;
    for (std::size_t q = 2; q * q <= rem; ++q) {
        if (rem % q != 0) continue;
        while (rem % q == 0) rem /= q;
        std::uint64_t u = x_red;
        for (std::size_t i = 0; i < degree / q; ++i) u = mulmod(u, u, poly, degree);
        if (poly_gcd(full, u ^ x_red) != 1) return false;
    }
    if (rem > 1 && rem < degree) {
        std::uint64_t u = x_red;
        for (std::size_t i = 0; i < degree / rem; ++i) u = mulmod(u, u, poly, degree);
        if (poly_gcd(full, u ^ x_red) != 1) return false;
    }
    return true;
}

std::uint64_t gf2_next_irreducible(std::uint64_t candidate, std::size_t degree) {
    const std::uint64_t mask = (degree == 64) ? ~std::uint64_t{0} : bit_at(degree) - 1;
    std::uint64_t v = (candidate | 1u) & mask;
    for (;;) {
        if (gf2_poly_irreducible(v, degree)) return v;
        v = (v + 2) & mask;
        v |= 1u;
    }
}

LfsrSpec lfsr_from_key(const BitString& key2k) {
    if (key2k.size() == 0 || key2k.size() % 2 != 0)
        throw std::invalid_argument("lfsr_from_key: key length must be 2k");
    const std::size_t k = key2k.size() / 2;
    if (k > 63) throw std::invalid_argument("lfsr_from_key: degree > 63 unsupported");

    LfsrSpec spec;
    spec.degree = k;
    spec.initial_state = key2k.slice(0, k);
    if (spec.initial_state.count_ones() == 0) spec.initial_state.set(0, true);

    std::uint64_t cand = 0;
    for (std::size_t i = 0; i < k; ++i)
        if (key2k.get(k + i)) cand |= bit_at(i);
    const std::uint64_t poly = gf2_next_irreducible(cand, k);

    spec.connection_poly = BitString(k);
    for (std::size_t i = 0; i < k; ++i)
        if (poly >> i & 1u) spec.connection_poly.set(i, true);
    return spec;
}

BitString lfsr_stream(const LfsrSpec& spec, std::size_t n_out) {
    const std::size_t k = spec.degree;
    if (k == 0 || k > 63 || spec.initial_state.size() != k || spec.connection_poly.size() != k)
        throw std::invalid_argument("lfsr_stream: malformed spec");
    if (spec.initial_state.count_ones() == 0)
        throw std::invalid_argument("lfsr_stream: all-zero initial state");

    std::uint64_t reg = 0, conn = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (spec.initial_state.get(i)) reg |= bit_at(i);
        if (spec.connection_poly.get(i)) conn |= bit_at(i);
    }

    BitString out(n_out);
    for (std::size_t t = 0; t < n_out; ++t) {
        if (reg & 1u) out.set(t, true);
        const bool fb = std::popcount(reg & conn) & 1;
        reg >>= 1;
        if (fb) reg |= bit_at(k - 1);
    }
    return out;
}

}  // namespace qkdpost
