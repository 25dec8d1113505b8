#pragma once

#include <cstddef>

#include "qkdpost/bitstring.hpp"

namespace qkdpost {

/// One-time-pad encrypted LFSR-Toeplitz authentication tag.
struct AuthTag {
    std::size_t k = 0;     // tag length in bits
    BitString ciphertext;  // length k
};

/// tag = OTP( Toeplitz_{k x m}(matrix_key) * message, pad_key ), where the
/// Toeplitz matrix comes from the LFSR construction seeded with matrix_key
/// (length 2k). The matrix key stays reusable because the tag is encrypted;
/// the pad is single-use.
AuthTag make_tag(const BitString& message, const BitString& matrix_key,
                 const BitString& pad_key);

bool verify_tag(const BitString& message, const AuthTag& tag, const BitString& matrix_key,
                const BitString& pad_key);

/// Authentication failure probability m * 2^{-k+1}, clamped to 1.
long double auth_failure_prob(std::uint64_t message_len, std::size_t k);

/// Smallest tag length k with message_len * 2^{-k+1} <= eps.
std::size_t required_tag_len(std::uint64_t message_len, long double eps);

}  // namespace qkdpost
