#pragma once

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

namespace qkdpost {

/// Packed bit string over GF(2). Bit 0 is the first transmitted/processed
/// bit (LSB-first everywhere: bit i lives in word i/64 at position i%64,
/// and in byte i/8 at position i%8 when serialized).
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    static BitString from_string(const std::string& s);   // "1011": s[0] is bit 0
    static BitString from_bytes(const std::uint8_t* data, std::size_t nbits);
    static BitString zeros(std::size_t nbits) { return BitString(nbits); }

    std::size_t size() const { return nbits_; }
    bool empty() const { return nbits_ == 0; }

    bool get(std::size_t i) const;
    void set(std::size_t i, bool v);

    void push_back(bool v);
    void append(const BitString& other);

    BitString slice(std::size_t start, std::size_t len) const;
    BitString reversed() const;

    /// XOR of `src` bits [src_off, src_off+len) into this string's bits
    /// [dst_off, dst_off+len). Word-parallel.
    void xor_range(std::size_t dst_off, const BitString& src, std::size_t src_off,
                   std::size_t len);

    /// Parity of the AND with `other` over the common prefix (dot product
    /// over GF(2)). Lengths must match.
    bool dot(const BitString& other) const;

    bool parity() const;
    std::size_t count_ones() const;

    std::vector<std::uint8_t> to_bytes() const;   // ceil(n/8) bytes, LSB-first in each byte
    std::string to_string() const;

    bool operator==(const BitString& rhs) const;
    bool operator!=(const BitString& rhs) const { return !(*this == rhs); }

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    void trim_tail();

    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

/// One-time pad: bitwise XOR of equal-length strings. Self-inverse.
BitString xor_otp(const BitString& message, const BitString& pad);

}  // namespace qkdpost
