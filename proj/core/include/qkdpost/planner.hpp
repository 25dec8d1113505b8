#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qkdpost/budget.hpp"

namespace qkdpost {

/// Tunables and calibration estimates for a run.
struct ProtocolParams {
    std::uint64_t n_pulses = 0;      // N, pulses sent by Alice
    long double eta = 1.0L;          // transmittance estimate
    long double e_bx_cal = 0.0L;     // calibration bit error rates
    long double e_bz_cal = 0.0L;
    long double eps_target = 1e-7L;  // failure probability budget for the session
    long double p_x = 0.5L;          // probability of choosing the X basis
    long double f_ec = 1.0L;         // error-correction efficiency model f(e); 1 = Shannon limit

    void validate() const;
};

/// Everything the optimizer fixes for a session, plus the recomputed
/// failure budget. All key costs are ceiled, l is floored.
struct PlanResult {
    bool feasible = false;
    std::string diagnostics;

    long double p_x = 0.0L;
    long double q_x = 0.0L;
    long double theta_x = 0.0L;
    long double theta_z = 0.0L;

    std::uint64_t n_raw = 0;  // basis-sift message length (raw key)
    std::uint64_t n_x = 0;
    std::uint64_t n_z = 0;
    bool use_x = true;  // participation: false = estimation only
    bool use_z = true;

    std::uint64_t k3 = 0;
    std::uint64_t t_oe = 0;
    std::uint64_t k_bs = 0;
    std::uint64_t k_ec = 0;
    std::uint64_t k_ev = 0;
    std::uint64_t k_pa = 0;

    std::int64_t l = 0;         // privacy-amplified key length
    std::int64_t net_key = 0;   // l - 2 k_bs - k_ec - k_ev - k_pa

    FailureBudget budget;       // recomputed from the rounded integers
    long double eps3_estimate = 0.0L;
};

/// Pre-run planning: n = N eta expected raw key; optimizes the basis bias
/// (searched over the biased ratio q_x, mapped through q = p^2/(p^2+(1-p)^2)
/// and n_x = p^2 n, n_z = (1-p)^2 n) and the deviations theta_x, theta_z,
/// maximizing the net key of the grouped-cost rate expression subject to
/// eps_ph <= eps_target. Deterministic: coarse grid + golden-section
/// coordinate refinement.
PlanResult optimize_plan(const ProtocolParams& params);

/// Same planning arithmetic with the basis bias pinned to params.p_x
/// (expected sizes, thetas optimized). The session engine runs this before
/// the exchange to fix k_bs and k_ev.
PlanResult plan_for_bias(const ProtocolParams& params);

/// Exact quantities measured by a run, for post-verification re-planning.
struct ObservedRun {
    std::uint64_t n_raw = 0;
    std::uint64_t n_x = 0;
    std::uint64_t n_z = 0;
    long double e_bx = 0.0L;  // counted after error correction
    long double e_bz = 0.0L;

    std::uint64_t k_bs = 0;         // already spent
    std::uint64_t k_ev = 0;         // per verification attempt
    std::uint64_t ev_attempts = 1;  // retries accumulate eps_ev
    std::uint64_t k_ec_metered = 0;
};

/// Post-verification re-optimization: n_x, n_z, e_bx, e_bz are fixed, only
/// (theta_x, theta_z) move; spent costs are carried through to the budget.
PlanResult replan_after_verification(const ProtocolParams& params, const ObservedRun& obs);

/// Rate in the asymptotic limit (theta -> 0, costs ignored, q_x -> 1):
/// 1 - f(e_bx) H2(e_bx) - H2(e_bz).
long double asymptotic_key_rate(long double e_bx, long double e_bz, long double f_ec);

}  // namespace qkdpost
