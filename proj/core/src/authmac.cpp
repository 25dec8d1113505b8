#include "qkdpost/authmac.hpp"

#include <cmath>
#include <stdexcept>

#include "qkdpost/toeplitz.hpp"

namespace qkdpost {

AuthTag make_tag(const BitString& message, const BitString& matrix_key,
                 const BitString& pad_key) {
    if (message.empty()) throw std::invalid_argument("make_tag: empty message");
    if (matrix_key.size() != 2 * pad_key.size())
        throw std::invalid_argument("make_tag: matrix key must be twice the pad length");
    const std::size_t k = pad_key.size();
    const ToeplitzSpec t = toeplitz_from_lfsr(matrix_key, k, message.size());
    return AuthTag{k, xor_otp(toeplitz_multiply(t, message), pad_key)};
}

bool verify_tag(const BitString& message, const AuthTag& tag, const BitString& matrix_key,
                const BitString& pad_key) {
    if (tag.ciphertext.size() != tag.k) return false;
    if (message.empty() || pad_key.size() != tag.k) return false;
    return make_tag(message, matrix_key, pad_key).ciphertext == tag.ciphertext;
}

long double auth_failure_prob(std::uint64_t message_len, std::size_t k) {
    if (message_len == 0 || k < 2)
        throw std::invalid_argument("auth_failure_prob: need m >= 1, k >= 2");
    const long double v =
        static_cast<long double>(message_len) * std::exp2l(1.0L - static_cast<long double>(k));
    return v > 1.0L ? 1.0L : v;
}

std::size_t required_tag_len(std::uint64_t message_len, long double eps) {
    if (!(eps > 0.0L && eps < 1.0L))
        throw std::invalid_argument("required_tag_len: eps must be in (0,1)");
    // smallest k with m * 2^{1-k} <= eps, i.e. k >= 1 + log2(m/eps)
    const long double need = 1.0L + std::log2l(static_cast<long double>(message_len) / eps);
    auto k = static_cast<std::size_t>(std::ceill(need));
    if (k < 2) k = 2;
    while (auth_failure_prob(message_len, k) > eps) ++k;  // guard rounding at the boundary
    return k;
}

}  // namespace qkdpost
