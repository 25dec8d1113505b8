#pragma once

#include <cstdint>
#include <vector>

#include "qkdpost/rng.hpp"
#include "qkdpost/sift.hpp"

namespace qkdpost {

/// Idealized BB84 link at desk scale: per pulse, a click with probability
/// eta; matched-basis outcomes flip with the basis QBER; mismatched-basis
/// outcomes are uniform.
struct ChannelModel {
    long double eta = 1e-3L;
    long double qber_x = 0.0L;
    long double qber_z = 0.0L;
    long double double_click_prob = 0.0L;
    long double dark_like_noise = 0.0L;  // chance a single-click bit is scrambled
    bool passive_basis = false;          // double clicks get a random basis at sift

    void validate() const;
};

/// Simulates N pulses with X-basis probability p_x for both parties. Only
/// clicked pulses are materialized (the no-click thinning is sampled as one
/// binomial), so memory and time scale with detections, not pulses.
std::vector<RawDetection> simulate_quantum_exchange(std::uint64_t n_pulses, long double p_x,
                                                    const ChannelModel& model, Rng& rng);

}  // namespace qkdpost
