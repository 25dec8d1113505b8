#include "qkdpost/budget.hpp"

#include <cmath>
#include <stdexcept>

namespace qkdpost {

std::int64_t net_key_length(std::int64_t l, std::int64_t k_bs, std::int64_t k_ec,
                            std::int64_t k_ev, std::int64_t k_pa) {
    return l - 2 * k_bs - k_ec - k_ev - k_pa;
}

GroupedCosts grouped_costs(std::uint64_t k3, long double n, long double n_xz, long double l) {
    if (n < 1.0L || n_xz < 1.0L || l < 1.0L)
        throw std::invalid_argument("grouped_costs: sizes must be >= 1");
    const long double log2A =
        2.0L * std::log2l(n) + std::log2l(n_xz) + std::log2l(n_xz + l - 1.0L);

    GroupedCosts out;
    out.t_oe_real = static_cast<long double>(k3) / 5.0L - 0.8L - log2A / 5.0L;
    if (out.t_oe_real < 1.0L) return out;  // infeasible
    out.feasible = true;
    out.t_oe = static_cast<std::uint64_t>(std::ceill(out.t_oe_real));
    out.k_bs = static_cast<std::uint64_t>(std::ceill(out.t_oe_real + 1.0L + std::log2l(n)));
    out.k_ev = static_cast<std::uint64_t>(std::ceill(out.t_oe_real + 1.0L + std::log2l(n_xz)));
    out.k_pa = static_cast<std::uint64_t>(
        std::ceill(out.t_oe_real + 1.0L + std::log2l(n_xz + l - 1.0L)));
    return out;
}

long double eps3(std::uint64_t k3, long double A) {
    if (A < 1.0L) throw std::invalid_argument("eps3: A must be >= 1");
    if (k3 <= 4) throw std::invalid_argument("eps3: k3 must exceed 4");
    // computed in log2 space: A can exceed the long double range in the
    // extreme-parameter checks
    const long double lg =
        std::log2l(5.0L) + std::log2l(A) / 5.0L -
        (static_cast<long double>(k3) - 4.0L) / 5.0L;
    return std::exp2l(lg);
}

long double eps3_from_sizes(std::uint64_t k3, long double n, long double n_xz, long double l) {
    const long double lgA =
        2.0L * std::log2l(n) + std::log2l(n_xz) + std::log2l(n_xz + l - 1.0L);
    const long double lg =
        std::log2l(5.0L) + lgA / 5.0L - (static_cast<long double>(k3) - 4.0L) / 5.0L;
    return std::exp2l(lg);
}

std::uint64_t k3_shortcut(long double eps, long double n) {
    if (!(eps > 0.0L && eps < 1.0L)) throw std::invalid_argument("k3_shortcut: eps outside (0,1)");
    if (n < 1.0L) throw std::invalid_argument("k3_shortcut: n must be >= 1");
    const long double v = -5.0L * std::log2l(eps) + 4.0L * std::log2l(n) + 50.0L;
    return static_cast<std::uint64_t>(std::ceill(v));
}

}  // namespace qkdpost
