#include "qdrive/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qdrive/adiabatic.hpp"
#include "qdrive/errors.hpp"
#include "qdrive/protocols.hpp"

namespace qdrive {

namespace {

using std::numbers::pi;

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

QuantumState base_ground(const ProtocolSchedule& schedule, double tau) {
    return eigensystem(schedule.base_gamma(tau), schedule.base_omega(tau)).ground;
}

double fidelity_once(const ProtocolSchedule& schedule, const QuantumState& initial,
                     const QuantumState& target, int steps) {
    PropagatorConfig cfg;
    cfg.steps = steps;
    const Trajectory traj = propagate(schedule, initial, cfg);
    return clamp01(overlap2(target, traj.final_state));
}

double fidelity_checked(const ProtocolSchedule& schedule, const QuantumState& initial,
                        const QuantumState& target, const PropagatorConfig& config) {
    const double coarse = fidelity_once(schedule, initial, target, config.steps);
    if (!config.convergence_check) return coarse;
    const double fine = fidelity_once(schedule, initial, target, 2 * config.steps);
    if (std::abs(coarse - fine) >= 1e-8) {
        throw non_convergence("final fidelity not grid-converged at " +
                                  std::to_string(config.steps) + " steps",
                              coarse, fine);
    }
    return coarse;
}

// Duration-parametrized fidelity for the searchable families. The
// Roland-Cerf sweep shape is epsilon-independent, so sweeping its duration is
// the same as sweeping epsilon through the duration relation.
struct FamilyCurve {
    double min_duration;  // open lower bound of the family's domain
    double seed;          // analytic first guess for the target crossing
    std::function<ProtocolSchedule(double)> make;
};

FamilyCurve family_curve(SearchFamily family, double omega, double target) {
    FamilyCurve c;
    switch (family) {
        case SearchFamily::lz_linear:
            c.min_duration = 0.0;
            c.seed = -4.0 * std::log(1.0 - target) / (pi * omega * omega);
            c.make = [omega](double T) { return lz_linear(omega, T); };
            break;
        case SearchFamily::roland_cerf: {
            const double t_lim = 1.0 / (omega * std::sqrt(4.0 + omega * omega));
            c.min_duration = t_lim;
            c.seed = t_lim / std::sqrt(1.0 - target);  // epsilon = sqrt(1 - target)
            c.make = [omega, t_lim](double T) {
                return roland_cerf(omega, t_lim / T);
            };
            break;
        }
    }
    return c;
}

}  // namespace

SpeedLimitResult quantum_speed_limit(const QuantumState& initial, const QuantumState& target,
                                     double omega) {
    if (!(omega > 0.0)) throw invalid_parameter("quantum_speed_limit requires omega > 0");
    SpeedLimitResult r;
    r.omega = omega;
    r.overlap = std::min(1.0, std::abs(inner(target, initial)));
    r.t_qs = std::acos(r.overlap) / omega;
    return r;
}

double final_fidelity(const ProtocolSchedule& schedule, const PropagatorConfig& config) {
    return fidelity_checked(schedule, base_ground(schedule, 0.0), base_ground(schedule, 1.0),
                            config);
}

double final_fidelity(const ProtocolSchedule& schedule, const QuantumState& initial,
                      const QuantumState& target, const PropagatorConfig& config) {
    return fidelity_checked(schedule, initial, target, config);
}

double lz_reference_fidelity(double omega, double duration) {
    if (!(omega > 0.0) || !(duration > 0.0)) {
        throw invalid_parameter("lz_reference_fidelity requires omega > 0 and T > 0");
    }
    return 1.0 - std::exp(-pi * duration * omega * omega / 4.0);
}

double time_to_fidelity(SearchFamily family, double omega, double target,
                        const PropagatorConfig& config) {
    if (!(omega > 0.0)) throw invalid_parameter("time_to_fidelity requires omega > 0");
    if (!(target > 0.0 && target < 1.0)) {
        throw invalid_parameter("time_to_fidelity requires target in (0, 1)");
    }

    const FamilyCurve curve = family_curve(family, omega, target);
    auto fidelity_at = [&](double T) { return final_fidelity(curve.make(T), config); };

    // coarse upward scan from well below the seed to the first bracket
    double lo = std::max(curve.min_duration * 1.001, curve.seed / 5.0);
    if (lo <= curve.min_duration) lo = curve.min_duration * 1.001 + 1e-6;
    double f_lo = fidelity_at(lo);
    if (f_lo >= target) {
        // already above target: walk down toward the domain edge
        double hi = lo;
        for (int i = 0; i < 400 && f_lo >= target; ++i) {
            hi = lo;
            lo = curve.min_duration + (lo - curve.min_duration) / 1.3;
            f_lo = fidelity_at(lo);
        }
        if (f_lo >= target) throw non_bracketable("fidelity target cannot be bracketed from below");
        // bracket is [lo, hi]
        double a = lo, b = hi;
        while (b - a > 1e-3) {
            const double mid = 0.5 * (a + b);
            (fidelity_at(mid) >= target ? b : a) = mid;
        }
        const double t = b;
        if (std::abs(fidelity_at(t) - target) > 1e-4) {
            throw non_bracketable("fidelity crossing too steep to localize");
        }
        return t;
    }

    double hi = lo;
    double f_hi = f_lo;
    for (int i = 0; i < 4000 && f_hi < target; ++i) {
        lo = hi;
        hi *= 1.05;
        f_hi = fidelity_at(hi);
        if (hi > 1e6) break;
    }
    if (f_hi < target) throw non_bracketable("fidelity target not reached within the scan range");

    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        (fidelity_at(mid) >= target ? hi : lo) = mid;
    }
    if (std::abs(fidelity_at(hi) - target) > 1e-4) {
        throw non_bracketable("fidelity crossing too steep to localize");
    }
    return hi;
}

RobustnessScan robustness_scan(const ProtocolSchedule& ideal, RobustnessAxis axis,
                               const std::vector<double>& deviations,
                               const PropagatorConfig& config) {
    for (double d : deviations) {
        if (!std::isfinite(d)) throw invalid_parameter("robustness deviations must be finite");
    }

    RobustnessScan scan;
    scan.axis = axis;
    scan.deviations = deviations;
    scan.fidelities.reserve(deviations.size());
    scan.skipped.reserve(deviations.size());

    for (double d : deviations) {
        const double scale = 1.0 + d;
        if (!(scale > 0.0)) {
            scan.fidelities.push_back(std::numeric_limits<double>::quiet_NaN());
            scan.skipped.push_back(true);
            continue;
        }
        ProtocolSchedule perturbed = ideal;
        if (axis == RobustnessAxis::duration) {
            perturbed.duration = ideal.duration * scale;
        } else {
            const Channel w = ideal.omega;
            perturbed.omega = Channel{
                [w, scale](double tau) { return scale * w.value(tau); },
                w.d1 ? ScheduleFn([w, scale](double tau) { return scale * w.d1(tau); }) : nullptr,
                w.d2 ? ScheduleFn([w, scale](double tau) { return scale * w.d2(tau); }) : nullptr};
        }
        scan.fidelities.push_back(final_fidelity(perturbed, config));
        scan.skipped.push_back(false);
    }
    return scan;
}

double tangent_duration_for_coupling(double omega, double omega_prime) {
    if (!(omega_prime > 0.0) || !(omega > 0.0) || !(omega < omega_prime)) {
        throw invalid_parameter("tangent duration requires 0 < omega < omega_prime");
    }
    return std::atan(2.0 / omega) / std::sqrt(omega_prime * omega_prime - omega * omega);
}

MinTimeResult min_time_at_coupling(double omega_prime, MinTimeFamily family) {
    if (family != MinTimeFamily::superadiabatic_tangent) {
        throw invalid_parameter("min_time_at_coupling supports the tangent family only");
    }
    if (!(omega_prime > 0.0)) {
        throw invalid_parameter("min_time_at_coupling requires omega_prime > 0");
    }

    // T(omega) decreases off the omega -> 0 edge and diverges at omega ->
    // omega_prime, so the minimum is interior and unimodal.
    const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = omega_prime * 1e-12;
    double b = omega_prime * (1.0 - 1e-12);
    double c = b - inv_gr * (b - a);
    double d = a + inv_gr * (b - a);
    auto f = [omega_prime](double w) { return tangent_duration_for_coupling(w, omega_prime); };
    double fc = f(c), fd = f(d);
    while (b - a > 1e-8 * omega_prime) {
        if (fc < fd) {
            b = d; d = c; fd = fc;
            c = b - inv_gr * (b - a);
            fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + inv_gr * (b - a);
            fd = f(d);
        }
    }
    MinTimeResult r;
    r.omega_star = 0.5 * (a + b);
    r.t_min = f(r.omega_star);
    return r;
}

}  // namespace qdrive
