#include "qkdpost/privacy_amplification.hpp"

#include <cmath>
#include <stdexcept>

#include "qkdpost/entropy.hpp"
#include "qkdpost/toeplitz.hpp"

namespace qkdpost {

PaLength pa_final_length(std::uint64_t n_x, std::uint64_t n_z, long double e_bx,
                         long double e_bz, long double theta_x, long double theta_z,
                         std::uint64_t t_oe) {
    const long double raw =
        static_cast<long double>(n_x) * (1.0L - binary_entropy(e_bz + theta_z)) +
        static_cast<long double>(n_z) * (1.0L - binary_entropy(e_bx + theta_x)) -
        static_cast<long double>(t_oe);
    PaLength out;
    if (raw < 0.0L) return out;  // infeasible, l = 0
    out.l = static_cast<std::int64_t>(std::floorl(raw));
    out.feasible = true;
    return out;
}

long double pa_failure_prob(std::uint64_t n_in, std::uint64_t l, std::uint64_t k_pa,
                            std::uint64_t t_oe) {
    const long double auth_term =
        (static_cast<long double>(n_in) + static_cast<long double>(l) - 1.0L) *
        std::exp2l(1.0L - static_cast<long double>(k_pa));
    return auth_term + std::exp2l(-static_cast<long double>(t_oe));
}

BitString pa_compress(const BitString& key, const BitString& seed) {
    if (key.empty()) throw std::invalid_argument("pa_compress: empty key");
    if (seed.size() < key.size())
        throw std::invalid_argument("pa_compress: seed shorter than key");
    const std::size_t l = seed.size() - key.size() + 1;
    const ToeplitzSpec t = make_toeplitz(l, key.size(), seed);
    return toeplitz_multiply(t, key);
}

}  // namespace qkdpost
