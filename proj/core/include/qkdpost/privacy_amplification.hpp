#pragma once

#include <cstdint>

#include "qkdpost/bitstring.hpp"

namespace qkdpost {

/// Final key length l = n_x [1 - H2(e_bz + theta_z)] + n_z [1 - H2(e_bx + theta_x)] - t_oe,
/// floored. A negative value is reported as infeasible with l = 0.
struct PaLength {
    std::int64_t l = 0;
    bool feasible = false;
};

PaLength pa_final_length(std::uint64_t n_x, std::uint64_t n_z, long double e_bx,
                         long double e_bz, long double theta_x, long double theta_z,
                         std::uint64_t t_oe);

/// eps_pa = (n_in + l - 1) 2^{-k_pa+1} + 2^{-t_oe}: authentication failure of
/// the seed transmission plus the hashing failure itself.
long double pa_failure_prob(std::uint64_t n_in, std::uint64_t l, std::uint64_t k_pa,
                            std::uint64_t t_oe);

/// Compress the verified key with the Toeplitz matrix whose diagonal is
/// `seed`; the output length is seed.size() - key.size() + 1.
BitString pa_compress(const BitString& key, const BitString& seed);

}  // namespace qkdpost
