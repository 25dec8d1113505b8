#include "qkdpost/sampling_oracle.hpp"

#include <stdexcept>

#include "qkdpost/phase_estimation.hpp"

namespace qkdpost {

namespace {

std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;  // exact: partial products are integral
    }
    return r;
}

}  // namespace

TailProbability hypergeometric_tail_oracle(std::uint64_t n_s, std::uint64_t n_t,
                                           std::uint64_t total_errors, long double theta) {
    const std::uint64_t n_tot = n_s + n_t;
    if (n_s < 1 || n_t < 1) throw std::invalid_argument("tail oracle: empty sample/target");
    if (n_tot > 30) throw std::invalid_argument("tail oracle: n_s + n_t must be <= 30");
    if (total_errors > n_tot) throw std::invalid_argument("tail oracle: E > n_s + n_t");

    TailProbability out;
    out.denominator = binomial_u64(n_tot, total_errors);
    const std::uint64_t k_lo = total_errors > n_t ? total_errors - n_t : 0;
    const std::uint64_t k_hi = std::min(total_errors, n_s);
    for (std::uint64_t k = k_lo; k <= k_hi; ++k) {
        const long double rate_t =
            static_cast<long double>(total_errors - k) / static_cast<long double>(n_t);
        const long double rate_s = static_cast<long double>(k) / static_cast<long double>(n_s);
        if (rate_t > rate_s + theta)
            out.numerator += binomial_u64(n_s, k) * binomial_u64(n_t, total_errors - k);
    }
    return out;
}

long double tail_outcome_bound(std::uint64_t n_s, std::uint64_t n_t, std::uint64_t total_errors,
                               std::uint64_t k_sample, long double theta) {
    if (k_sample > total_errors || k_sample > n_s || total_errors - k_sample > n_t)
        throw std::invalid_argument("tail_outcome_bound: outcome outside support");
    if (total_errors - k_sample == n_t) return 1.0L;  // saturated target
    if (n_s < 2) return 1.0L;

    const auto ns = static_cast<long double>(n_s);
    const auto nt = static_cast<long double>(n_t);
    const long double n_tot = ns + nt;
    const long double q = ns / n_tot;

    const long double e_raw = static_cast<long double>(k_sample) / ns;
    std::uint64_t k_pref = k_sample;
    if (k_pref < 1) k_pref = 1;
    if (k_pref > n_s - 1) k_pref = n_s - 1;
    const long double e_pref = static_cast<long double>(k_pref) / ns;

    const long double th = std::min(theta, 1.0L - e_raw);
    const long double log2_pref =
        0.5L * (std::log2l(n_tot) - std::log2l(ns * nt * e_pref * (1.0L - e_pref)));
    const long double lg = log2_pref - n_tot * xi_exponent(th, e_raw, q);
    return lg >= 0.0L ? 1.0L : std::exp2l(lg);
}

TailSweepReport tail_soundness_sweep(std::uint64_t max_total,
                                     const std::vector<long double>& theta_grid) {
    TailSweepReport rep;
    for (std::uint64_t n_tot = 2; n_tot <= max_total; ++n_tot) {
        for (std::uint64_t n_s = 1; n_s < n_tot; ++n_s) {
            const std::uint64_t n_t = n_tot - n_s;
            for (std::uint64_t E = 0; E <= n_tot; ++E) {
                for (const long double theta : theta_grid) {
                    const TailProbability exact = hypergeometric_tail_oracle(n_s, n_t, E, theta);
                    if (exact.numerator == 0) continue;
                    ++rep.cases_checked;

                    long double bound = 0.0L;
                    const std::uint64_t k_lo = E > n_t ? E - n_t : 0;
                    const std::uint64_t k_hi = std::min(E, n_s);
                    for (std::uint64_t k = k_lo; k <= k_hi; ++k) {
                        const long double rate_t = static_cast<long double>(E - k) /
                                                   static_cast<long double>(n_t);
                        const long double rate_s =
                            static_cast<long double>(k) / static_cast<long double>(n_s);
                        if (rate_t > rate_s + theta)
                            bound = std::max(bound, tail_outcome_bound(n_s, n_t, E, k, theta));
                    }
                    if (bound < 1.0L) ++rep.nontrivial;

                    const TailSweepCase c{n_s, n_t, E, theta, exact.value(), bound};
                    const long double ratio = static_cast<long double>(exact.value()) / bound;
                    if (ratio > rep.worst_ratio) {
                        rep.worst_ratio = ratio;
                        rep.worst = c;
                    }
                    if (static_cast<long double>(exact.value()) > bound)
                        rep.violations.push_back(c);
                }
            }
        }
    }
    return rep;
}

std::vector<long double> default_tail_theta_grid() {
    std::vector<long double> grid;
    for (int i = 1; i <= 60; ++i) grid.push_back(0.0125L * i);
    return grid;
}

}  // namespace qkdpost
