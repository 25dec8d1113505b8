#pragma once

#include <cstdint>

#include "qkdpost/entropy.hpp"

namespace qkdpost {

/// Phase-error estimation by random sampling. The X-basis bit error rate
/// (sample) bounds the Z-basis phase error rate (target) and vice versa:
/// the probability that the target error rate exceeds the sample rate plus
/// theta decays as 2^{-(n_s+n_t) xi(theta)} with a polynomial prefactor.

/// xi(theta) = H2(e_b + theta - q theta) - q H2(e_b) - (1-q) H2(e_b + theta),
/// q = n_s/(n_s+n_t). Positive for theta > 0 by strict concavity of H2.
long double xi_exponent(long double theta, long double e_b, long double q);

/// log2 of the tail-probability bound for sample (n_s, rate e_b) versus
/// target (n_t): log2 prefactor - (n_s+n_t) xi. Computing in log space keeps
/// large-theta evaluations from underflowing.
/// A zero observed rate is replaced by e_b = 1/n_s (one fictitious error);
/// symmetrically e_b = 1 becomes 1 - 1/n_s.
long double log2_p_theta_bound(std::uint64_t n_s, std::uint64_t n_t, long double e_b_sample,
                               long double theta);

/// The bound itself, clamped to [0, 1].
long double p_theta_bound(std::uint64_t n_s, std::uint64_t n_t, long double e_b_sample,
                          long double theta);

/// Real-valued population variants for the optimizer, where n_x = p_x^2 n is
/// fractional while the bias is being searched.
long double log2_p_theta_bound_real(long double n_s, long double n_t, long double e_b_sample,
                                    long double theta);
long double p_theta_bound_real(long double n_s, long double n_t, long double e_b_sample,
                               long double theta);

struct PhaseEstimate {
    long double theta_x = 0.0L;    // deviation on e_bx, bounds e_pz
    long double theta_z = 0.0L;    // deviation on e_bz, bounds e_px
    long double p_theta_x = 0.0L;
    long double p_theta_z = 0.0L;
    long double eps_ph = 0.0L;     // p_theta_x + p_theta_z
};

/// Crossed pairing: (n_x, e_bx, theta_x) bounds e_pz; (n_z, e_bz, theta_z)
/// bounds e_px.
PhaseEstimate estimate_phase_error(std::uint64_t n_x, std::uint64_t n_z, long double e_bx,
                                   long double e_bz, long double theta_x, long double theta_z);

}  // namespace qkdpost
