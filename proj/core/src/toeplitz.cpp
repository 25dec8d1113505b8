#include "qkdpost/toeplitz.hpp"

#include <bit>
#include <stdexcept>

namespace qkdpost {

ToeplitzSpec make_toeplitz(std::size_t rows, std::size_t cols, BitString diagonal_bits,
                           ToeplitzSpec::Source source) {
    if (rows == 0 || cols == 0)
        throw std::invalid_argument("make_toeplitz: zero dimension");
    if (diagonal_bits.size() != rows + cols - 1)
        throw std::invalid_argument("make_toeplitz: diagonal length != rows+cols-1");
    return ToeplitzSpec{rows, cols, std::move(diagonal_bits), source};
}

BitString toeplitz_multiply(const ToeplitzSpec& spec, const BitString& v) {
    if (v.size() != spec.cols)
        throw std::invalid_argument("toeplitz_multiply: vector length != cols");
    // y_i = XOR_j entry(i,j) v_j = XOR_t d[i+t] vr[t] with vr = reverse(v),
    // i.e. y = XOR over set bits t of vr of the window d[t .. t+rows).
    const BitString vr = v.reversed();
    BitString y(spec.rows);
    const auto& words = vr.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::uint64_t bits = words[w];
        while (bits) {
            const std::size_t t = w * 64 + std::countr_zero(bits);
            bits &= bits - 1;
            y.xor_range(0, spec.diagonal_bits, t, spec.rows);
        }
    }
    return y;
}

ToeplitzSpec toeplitz_from_lfsr(const BitString& key2k, std::size_t rows, std::size_t cols) {
    if (key2k.size() != 2 * rows)
        throw std::invalid_argument("toeplitz_from_lfsr: key length != 2*rows");
    const LfsrSpec lfsr = lfsr_from_key(key2k);
    BitString diag = lfsr_stream(lfsr, rows + cols - 1);
    return ToeplitzSpec{rows, cols, std::move(diag), ToeplitzSpec::Source::LfsrGenerated};
}

}  // namespace qkdpost
