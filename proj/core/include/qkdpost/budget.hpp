#pragma once

#include <cstdint>

namespace qkdpost {

/// Failure-probability ledger: eps_total = 2 eps_bs + eps_ev + eps_ph + eps_pa.
struct FailureBudget {
    long double eps_bs = 0.0L;
    long double eps_ev = 0.0L;
    long double eps_ph = 0.0L;
    long double eps_pa = 0.0L;

    long double total() const { return 2.0L * eps_bs + eps_ev + eps_ph + eps_pa; }
};

/// Net key growth: l - 2 k_bs - k_ec - k_ev - k_pa. Negative means the
/// session consumed more pre-shared key than it produced.
std::int64_t net_key_length(std::int64_t l, std::int64_t k_bs, std::int64_t k_ec,
                            std::int64_t k_ev, std::int64_t k_pa);

/// Grouped secondary costs: given k3 = 2 k_bs + k_ev + k_pa + t_oe and
/// A = n^2 (n_x+n_z)(n_x+n_z+l-1), the closed forms
///   t_oe = k3/5 - 4/5 - (1/5) log2 A
///   k_bs = t_oe + 1 + log2 n
///   k_ev = t_oe + 1 + log2 (n_x+n_z)
///   k_pa = t_oe + 1 + log2 (n_x+n_z+l-1)
/// with each result ceiled.
struct GroupedCosts {
    bool feasible = false;  // requires t_oe >= 1
    long double t_oe_real = 0.0L;
    std::uint64_t t_oe = 0;
    std::uint64_t k_bs = 0;
    std::uint64_t k_ev = 0;
    std::uint64_t k_pa = 0;
};

GroupedCosts grouped_costs(std::uint64_t k3, long double n, long double n_xz, long double l);

/// eps3 = 5 A^{1/5} 2^{-(k3-4)/5}, the failure probability bundled over the
/// basis-sift, error-verification and privacy-amplification costs.
long double eps3(std::uint64_t k3, long double A);
long double eps3_from_sizes(std::uint64_t k3, long double n, long double n_xz, long double l);

/// k3 = ceil(-5 log2 eps + 4 log2 n + 50); valid once the key is much longer
/// than ~37 bits, and gives eps3 < 1e-2 eps.
std::uint64_t k3_shortcut(long double eps, long double n);

}  // namespace qkdpost
