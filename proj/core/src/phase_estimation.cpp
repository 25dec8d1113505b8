#include "qkdpost/phase_estimation.hpp"

#include <cmath>
#include <stdexcept>

namespace qkdpost {

long double xi_exponent(long double theta, long double e_b, long double q) {
    if (e_b < 0.0L || theta < 0.0L || e_b + theta > 1.0L)
        throw std::invalid_argument("xi_exponent: need 0 <= e_b, e_b + theta <= 1");
    if (!(q > 0.0L && q < 1.0L)) throw std::invalid_argument("xi_exponent: q outside (0,1)");
    return binary_entropy(e_b + theta - q * theta) - q * binary_entropy(e_b) -
           (1.0L - q) * binary_entropy(e_b + theta);
}

long double log2_p_theta_bound_real(long double n_s, long double n_t, long double e_b_sample,
                                    long double theta) {
    if (n_s < 1.0L || n_t < 1.0L)
        throw std::invalid_argument("p_theta_bound: empty sample/target");
    if (e_b_sample < 0.0L || e_b_sample > 1.0L)
        throw std::invalid_argument("p_theta_bound: rate outside [0,1]");
    if (!(theta > 0.0L)) throw std::invalid_argument("p_theta_bound: theta must be positive");

    long double e = e_b_sample;
    if (e == 0.0L) e = 1.0L / n_s;        // singularity rule: n_s * e_b = 1
    if (e == 1.0L) e = 1.0L - 1.0L / n_s;
    if (e <= 0.0L || e >= 1.0L) return 0.0L;  // n_s == 1: bound vacuous, caller clamps

    const long double n_tot = n_s + n_t;
    const long double q = n_s / n_tot;
    const long double th = std::min(theta, 1.0L - e);
    const long double log2_pref =
        0.5L * (std::log2l(n_tot) - std::log2l(n_s * n_t * e * (1.0L - e)));
    return log2_pref - n_tot * xi_exponent(th, e, q);
}

long double p_theta_bound_real(long double n_s, long double n_t, long double e_b_sample,
                               long double theta) {
    const long double lg = log2_p_theta_bound_real(n_s, n_t, e_b_sample, theta);
    if (lg >= 0.0L) return 1.0L;
    return std::exp2l(lg);
}

long double log2_p_theta_bound(std::uint64_t n_s, std::uint64_t n_t, long double e_b_sample,
                               long double theta) {
    return log2_p_theta_bound_real(static_cast<long double>(n_s),
                                   static_cast<long double>(n_t), e_b_sample, theta);
}

long double p_theta_bound(std::uint64_t n_s, std::uint64_t n_t, long double e_b_sample,
                          long double theta) {
    return p_theta_bound_real(static_cast<long double>(n_s), static_cast<long double>(n_t),
                              e_b_sample, theta);
}

PhaseEstimate estimate_phase_error(std::uint64_t n_x, std::uint64_t n_z, long double e_bx,
                                   long double e_bz, long double theta_x, long double theta_z) {
    PhaseEstimate est;
    est.theta_x = theta_x;
    est.theta_z = theta_z;
    est.p_theta_x = p_theta_bound(n_x, n_z, e_bx, theta_x);
    est.p_theta_z = p_theta_bound(n_z, n_x, e_bz, theta_z);
    est.eps_ph = est.p_theta_x + est.p_theta_z;
    return est;
}

}  // namespace qkdpost
