#include "qkdpost/bitstring.hpp"

#include <bit>
#include <stdexcept>

namespace qkdpost {

BitString BitString::from_string(const std::string& s) {
    BitString b(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') {
            b.set(i, true);
        } else if (s[i] != '0') {
            throw std::invalid_argument("BitString::from_string: not a 0/1 string");
        }
    }
    return b;
}

BitString BitString::from_bytes(const std::uint8_t* data, std::size_t nbits) {
    BitString b(nbits);
    const std::size_t nbytes = (nbits + 7) / 8;
    for (std::size_t i = 0; i < nbytes; ++i) {
        b.words_[i / 8] |= static_cast<std::uint64_t>(data[i]) << (8 * (i % 8));
    }
    b.trim_tail();
    return b;
}

bool BitString::get(std::size_t i) const {
    if (i >= nbits_) throw std::out_of_range("BitString::get");
    return (words_[i / 64] >> (i % 64)) & 1u;
}

void BitString::set(std::size_t i, bool v) {
    if (i >= nbits_) throw std::out_of_range("BitString::set");
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (v)
        words_[i / 64] |= mask;
    else
        words_[i / 64] &= ~mask;
}

void BitString::push_back(bool v) {
    if (nbits_ % 64 == 0) words_.push_back(0);
    ++nbits_;
    if (v) set(nbits_ - 1, true);
}

void BitString::append(const BitString& other) {
    const std::size_t off = nbits_;
    nbits_ += other.nbits_;
    words_.resize((nbits_ + 63) / 64, 0);
    xor_range(off, other, 0, other.nbits_);
}

BitString BitString::slice(std::size_t start, std::size_t len) const {
    if (start + len > nbits_) throw std::out_of_range("BitString::slice");
    BitString out(len);
    out.xor_range(0, *this, start, len);
    return out;
}

BitString BitString::reversed() const {
    BitString out(nbits_);
    for (std::size_t i = 0; i < nbits_; ++i)
        if (get(i)) out.set(nbits_ - 1 - i, true);
    return out;
}

void BitString::xor_range(std::size_t dst_off, const BitString& src, std::size_t src_off,
                          std::size_t len) {
    if (src_off + len > src.nbits_ || dst_off + len > nbits_)
        throw std::out_of_range("BitString::xor_range");
    // process 64-bit chunks of the source window
    std::size_t done = 0;
    while (done < len) {
        const std::size_t n = std::min<std::size_t>(64, len - done);
        const std::size_t s = src_off + done;
        std::uint64_t chunk = src.words_[s / 64] >> (s % 64);
        if (s % 64 != 0 && s / 64 + 1 < src.words_.size())
            chunk |= src.words_[s / 64 + 1] << (64 - s % 64);
        if (n < 64) chunk &= (std::uint64_t{1} << n) - 1;

        const std::size_t d = dst_off + done;
        words_[d / 64] ^= chunk << (d % 64);
        if (d % 64 != 0 && d % 64 + n > 64) words_[d / 64 + 1] ^= chunk >> (64 - d % 64);
        done += n;
    }
    trim_tail();
}

bool BitString::dot(const BitString& other) const {
    if (other.nbits_ != nbits_) throw std::invalid_argument("BitString::dot: length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
    return std::popcount(acc) & 1;
}

bool BitString::parity() const {
    std::uint64_t acc = 0;
    for (auto w : words_) acc ^= w;
    return std::popcount(acc) & 1;
}

std::size_t BitString::count_ones() const {
    std::size_t n = 0;
    for (auto w : words_) n += std::popcount(w);
    return n;
}

std::vector<std::uint8_t> BitString::to_bytes() const {
    std::vector<std::uint8_t> out((nbits_ + 7) / 8, 0);
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint8_t>(words_[i / 8] >> (8 * (i % 8)));
    return out;
}

std::string BitString::to_string() const {
    std::string s(nbits_, '0');
    for (std::size_t i = 0; i < nbits_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

bool BitString::operator==(const BitString& rhs) const {
    return nbits_ == rhs.nbits_ && words_ == rhs.words_;
}

void BitString::trim_tail() {
    if (nbits_ % 64 != 0 && !words_.empty())
        words_.back() &= (std::uint64_t{1} << (nbits_ % 64)) - 1;
}

BitString xor_otp(const BitString& message, const BitString& pad) {
    if (message.size() != pad.size())
        throw std::invalid_argument("xor_otp: message/pad length mismatch");
    BitString out = message;
    out.xor_range(0, pad, 0, pad.size());
    return out;
}

}  // namespace qkdpost
