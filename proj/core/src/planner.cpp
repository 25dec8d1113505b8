#include "qkdpost/planner.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qkdpost/entropy.hpp"
#include "qkdpost/phase_estimation.hpp"

namespace qkdpost {

namespace {

constexpr long double kThetaFloor = 1e-15L;

struct ThetaPair {
    bool ok = false;
    long double theta_x = 0.0L;
    long double theta_z = 0.0L;
    long double objective = 0.0L;  // grouped-cost net key expression
};

long double substituted_rate(long double e, long double n_s) {
    if (e == 0.0L) return 1.0L / n_s;
    if (e == 1.0L) return 1.0L - 1.0L / n_s;
    return e;
}

/// Smallest theta whose tail bound is <= target; nullopt when even the
/// maximal deviation cannot reach it.
std::optional<long double> solve_theta(long double n_s, long double n_t, long double e_b,
                                       long double target) {
    if (!(target > 0.0L)) return std::nullopt;
    const long double e = substituted_rate(e_b, n_s);
    const long double theta_max = 1.0L - e;
    if (theta_max <= kThetaFloor) return std::nullopt;
    if (p_theta_bound_real(n_s, n_t, e_b, theta_max) > target) return std::nullopt;
    long double lo = kThetaFloor, hi = theta_max;
    if (p_theta_bound_real(n_s, n_t, e_b, lo) <= target) return lo;
    for (int i = 0; i < 120; ++i) {
        const long double mid = 0.5L * (lo + hi);
        if (p_theta_bound_real(n_s, n_t, e_b, mid) <= target)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

long double grouped_objective(long double n_x, long double n_z, long double e_bx,
                              long double e_bz, long double f_ec, long double k3,
                              long double theta_x, long double theta_z) {
    const long double bx =
        1.0L - f_ec * binary_entropy(e_bx) - binary_entropy(e_bz + theta_z);
    const long double bz =
        1.0L - f_ec * binary_entropy(e_bz) - binary_entropy(e_bx + theta_x);
    // negative basis: estimation only, no key contribution
    return n_x * std::max(bx, 0.0L) + n_z * std::max(bz, 0.0L) - k3;
}

/// Optimal split of the phase-estimation budget between the two bases at
/// fixed populations: golden-section over the log-odds of the split.
ThetaPair best_thetas(long double n_x, long double n_z, long double e_bx, long double e_bz,
                      long double f_ec, long double k3, long double eps_ph_budget) {
    auto eval = [&](long double s) -> ThetaPair {
        const long double alpha = 1.0L / (1.0L + std::exp2l(-s));  // split in log-odds
        ThetaPair r;
        const auto tx = solve_theta(n_x, n_z, e_bx, alpha * eps_ph_budget);
        const auto tz = solve_theta(n_z, n_x, e_bz, (1.0L - alpha) * eps_ph_budget);
        if (!tx || !tz) return r;
        r.ok = true;
        r.theta_x = std::min(*tx, 1.0L - substituted_rate(e_bx, n_x));
        r.theta_z = std::min(*tz, 1.0L - substituted_rate(e_bz, n_z));
        r.objective = grouped_objective(n_x, n_z, e_bx, e_bz, f_ec, k3, r.theta_x, r.theta_z);
        return r;
    };

    // coarse grid on the split, then golden refinement between neighbours
    constexpr long double s_lo = -30.0L, s_hi = 30.0L;
    long double best_s = 0.0L;
    ThetaPair best;
    for (long double s = s_lo; s <= s_hi; s += 2.0L) {
        const ThetaPair r = eval(s);
        if (r.ok && (!best.ok || r.objective > best.objective)) {
            best = r;
            best_s = s;
        }
    }
    if (!best.ok) return best;

    const long double invphi = 0.6180339887498948482L;
    long double a = best_s - 2.0L, b = best_s + 2.0L;
    long double c = b - invphi * (b - a), d = a + invphi * (b - a);
    ThetaPair fc = eval(c), fd = eval(d);
    auto val = [](const ThetaPair& t) {
        return t.ok ? t.objective : -1e300L;
    };
    for (int i = 0; i < 90; ++i) {
        if (val(fc) >= val(fd)) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = eval(d);
        }
    }
    const ThetaPair mid = eval(0.5L * (a + b));
    return val(mid) >= val(best) ? mid : best;
}

long double bias_from_ratio(long double q) {
    const long double r = std::sqrtl(q / (1.0L - q));
    return r / (1.0L + r);
}

/// Shared tail: rounding, grouped costs, budget recomputation.
PlanResult finalize_plan(const ProtocolParams& params, std::uint64_t n_raw, std::uint64_t n_x,
                         std::uint64_t n_z, long double e_bx, long double e_bz,
                         const ThetaPair& thetas, std::uint64_t k3,
                         const ObservedRun* fixed_costs) {
    PlanResult plan;
    plan.n_raw = n_raw;
    plan.n_x = n_x;
    plan.n_z = n_z;
    plan.q_x = static_cast<long double>(n_x) / (static_cast<long double>(n_x) + n_z);
    plan.theta_x = thetas.theta_x;
    plan.theta_z = thetas.theta_z;
    plan.k3 = k3;

    if (!thetas.ok) {
        plan.diagnostics = "no feasible deviation pair within the phase-error budget";
        return plan;
    }

    const long double f = params.f_ec;
    const long double bx =
        1.0L - f * binary_entropy(e_bx) - binary_entropy(e_bz + thetas.theta_z);
    const long double bz =
        1.0L - f * binary_entropy(e_bz) - binary_entropy(e_bx + thetas.theta_x);
    plan.use_x = bx > 0.0L;
    plan.use_z = bz > 0.0L;
    if (!plan.use_x && !plan.use_z) {
        plan.diagnostics = "both basis contributions negative";
        return plan;
    }

    const long double nxl = static_cast<long double>(n_x);
    const long double nzl = static_cast<long double>(n_z);
    const long double n_keep = (plan.use_x ? nxl : 0.0L) + (plan.use_z ? nzl : 0.0L);
    const long double key_real =
        (plan.use_x ? nxl * (1.0L - binary_entropy(e_bz + thetas.theta_z)) : 0.0L) +
        (plan.use_z ? nzl * (1.0L - binary_entropy(e_bx + thetas.theta_x)) : 0.0L);

    // l and t_oe are mutually dependent through A; the log coupling
    // converges in a few rounds
    long double l_real = key_real;
    GroupedCosts costs;
    for (int i = 0; i < 4; ++i) {
        if (l_real < 1.0L) {
            plan.diagnostics = "key exhausted by t_oe";
            return plan;
        }
        costs = grouped_costs(k3, static_cast<long double>(n_raw), n_keep, l_real);
        if (!costs.feasible) {
            plan.diagnostics = "grouped costs infeasible (t_oe < 1)";
            return plan;
        }
        l_real = key_real - costs.t_oe_real;
    }
    if (l_real < 1.0L) {
        plan.diagnostics = "key exhausted by t_oe";
        return plan;
    }

    plan.t_oe = costs.t_oe;
    plan.l = static_cast<std::int64_t>(std::floorl(l_real));

    if (fixed_costs) {
        plan.k_bs = fixed_costs->k_bs;
        plan.k_ev = fixed_costs->k_ev;
        plan.k_ec = fixed_costs->k_ec_metered;
        plan.k_pa = costs.k_pa;
    } else {
        plan.k_bs = costs.k_bs;
        plan.k_ev = costs.k_ev;
        plan.k_pa = costs.k_pa;
        const long double k_ec_real = (plan.use_x ? nxl * f * binary_entropy(e_bx) : 0.0L) +
                                      (plan.use_z ? nzl * f * binary_entropy(e_bz) : 0.0L);
        plan.k_ec = static_cast<std::uint64_t>(std::ceill(k_ec_real));
    }

    const std::uint64_t ev_attempts = fixed_costs ? fixed_costs->ev_attempts : 1;
    plan.net_key = net_key_length(plan.l, static_cast<std::int64_t>(plan.k_bs),
                                  static_cast<std::int64_t>(plan.k_ec),
                                  static_cast<std::int64_t>(plan.k_ev * ev_attempts),
                                  static_cast<std::int64_t>(plan.k_pa));

    plan.budget.eps_bs =
        static_cast<long double>(n_raw) * std::exp2l(1.0L - static_cast<long double>(plan.k_bs));
    plan.budget.eps_ev = static_cast<long double>(ev_attempts) * n_keep *
                         std::exp2l(1.0L - static_cast<long double>(plan.k_ev));
    plan.budget.eps_ph = p_theta_bound(n_x, n_z, e_bx, thetas.theta_x) +
                         p_theta_bound(n_z, n_x, e_bz, thetas.theta_z);
    plan.budget.eps_pa =
        (n_keep + static_cast<long double>(plan.l) - 1.0L) *
            std::exp2l(1.0L - static_cast<long double>(plan.k_pa)) +
        std::exp2l(-static_cast<long double>(plan.t_oe));
    plan.eps3_estimate = eps3_from_sizes(k3, static_cast<long double>(n_raw), n_keep,
                                         static_cast<long double>(plan.l));

    plan.feasible = plan.l > 0;
    if (!plan.feasible) plan.diagnostics = "privacy amplification output empty";
    return plan;
}

}  // namespace

void ProtocolParams::validate() const {
    if (n_pulses == 0) throw std::invalid_argument("params: N must be positive");
    if (!(eta > 0.0L && eta <= 1.0L)) throw std::invalid_argument("params: eta outside (0,1]");
    if (e_bx_cal < 0.0L || e_bx_cal > 0.5L || e_bz_cal < 0.0L || e_bz_cal > 0.5L)
        throw std::invalid_argument("params: calibration error rates outside [0,0.5]");
    if (!(eps_target > 0.0L && eps_target < 1.0L))
        throw std::invalid_argument("params: eps_target outside (0,1)");
    if (!(p_x > 0.0L && p_x < 1.0L)) throw std::invalid_argument("params: p_x outside (0,1)");
    if (f_ec < 1.0L) throw std::invalid_argument("params: f must be >= 1 (Shannon limit)");
}

PlanResult optimize_plan(const ProtocolParams& params) {
    params.validate();
    const long double n = static_cast<long double>(params.n_pulses) * params.eta;
    if (n < 16.0L) {
        PlanResult plan;
        plan.diagnostics = "expected raw key too short to plan";
        return plan;
    }
    const auto n_raw = static_cast<std::uint64_t>(std::llroundl(n));
    const std::uint64_t k3 = k3_shortcut(params.eps_target, n);
    const long double budget = params.eps_target;

    auto inner = [&](long double p) {
        return best_thetas(p * p * n, (1.0L - p) * (1.0L - p) * n, params.e_bx_cal,
                           params.e_bz_cal, params.f_ec, static_cast<long double>(k3), budget);
    };

    // coarse grid over the biased ratio q_x in (0.5, 0.999], log-spaced in 1-q
    constexpr int kGridPoints = 28;
    long double best_obj = -1e300L;
    int best_i = -1;
    std::vector<long double> ps;
    for (int i = 0; i < kGridPoints; ++i) {
        const long double t =
            0.30103L + (3.2L - 0.30103L) * static_cast<long double>(i) / (kGridPoints - 1);
        ps.push_back(bias_from_ratio(1.0L - std::powl(10.0L, -t)));
    }
    for (int i = 0; i < kGridPoints; ++i) {
        const ThetaPair r = inner(ps[i]);
        if (r.ok && r.objective > best_obj) {
            best_obj = r.objective;
            best_i = i;
        }
    }
    if (best_i < 0) {
        PlanResult plan;
        plan.n_raw = n_raw;
        plan.k3 = k3;
        plan.diagnostics = "no feasible bias point";
        return plan;
    }

    long double a = ps[std::max(best_i - 1, 0)];
    long double b = ps[std::min(best_i + 1, kGridPoints - 1)];
    const long double invphi = 0.6180339887498948482L;
    long double c = b - invphi * (b - a), d = a + invphi * (b - a);
    auto obj_at = [&](long double p) {
        const ThetaPair r = inner(p);
        return r.ok ? r.objective : -1e300L;
    };
    long double fc = obj_at(c);
    long double fd = obj_at(d);
    for (int i = 0; i < 80; ++i) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = obj_at(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = obj_at(d);
        }
    }
    const long double p_opt = 0.5L * (a + b);
    const ThetaPair thetas = inner(p_opt);

    const auto n_x = static_cast<std::uint64_t>(std::llroundl(p_opt * p_opt * n));
    const auto n_z =
        static_cast<std::uint64_t>(std::llroundl((1.0L - p_opt) * (1.0L - p_opt) * n));
    PlanResult plan = finalize_plan(params, n_raw, n_x, n_z, params.e_bx_cal, params.e_bz_cal,
                                    thetas, k3, nullptr);
    plan.p_x = p_opt;
    return plan;
}

PlanResult plan_for_bias(const ProtocolParams& params) {
    params.validate();
    const long double n = static_cast<long double>(params.n_pulses) * params.eta;
    if (n < 16.0L) {
        PlanResult plan;
        plan.diagnostics = "expected raw key too short to plan";
        return plan;
    }
    const auto n_raw = static_cast<std::uint64_t>(std::llroundl(n));
    const std::uint64_t k3 = k3_shortcut(params.eps_target, n);
    const long double p = params.p_x;
    const ThetaPair thetas =
        best_thetas(p * p * n, (1.0L - p) * (1.0L - p) * n, params.e_bx_cal, params.e_bz_cal,
                    params.f_ec, static_cast<long double>(k3), params.eps_target);
    const auto n_x = static_cast<std::uint64_t>(std::llroundl(p * p * n));
    const auto n_z = static_cast<std::uint64_t>(std::llroundl((1.0L - p) * (1.0L - p) * n));
    PlanResult plan = finalize_plan(params, n_raw, n_x, n_z, params.e_bx_cal, params.e_bz_cal,
                                    thetas, k3, nullptr);
    plan.p_x = p;
    return plan;
}

PlanResult replan_after_verification(const ProtocolParams& params, const ObservedRun& obs) {
    params.validate();
    if (obs.n_x == 0 || obs.n_z == 0)
        throw std::invalid_argument("replan: both bases need sifted detections");
    const std::uint64_t k3 =
        k3_shortcut(params.eps_target, static_cast<long double>(obs.n_raw));
    const ThetaPair thetas = best_thetas(static_cast<long double>(obs.n_x),
                                         static_cast<long double>(obs.n_z), obs.e_bx, obs.e_bz,
                                         params.f_ec, static_cast<long double>(k3),
                                         params.eps_target);
    PlanResult plan = finalize_plan(params, obs.n_raw, obs.n_x, obs.n_z, obs.e_bx, obs.e_bz,
                                    thetas, k3, &obs);
    plan.p_x = params.p_x;
    return plan;
}

long double asymptotic_key_rate(long double e_bx, long double e_bz, long double f_ec) {
    return 1.0L - f_ec * binary_entropy(e_bx) - binary_entropy(e_bz);
}

}  // namespace qkdpost
