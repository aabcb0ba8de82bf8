#include "qdrive/schedule.hpp"

#include <algorithm>
#include <cmath>

#include "qdrive/errors.hpp"

namespace qdrive {

namespace {
constexpr double kFdStep = 1e-6;  // central-difference step in tau

double clamp_center(double tau, double h) {
    return std::min(std::max(tau, h), 1.0 - h);
}
}  // namespace

double Channel::deriv1(double tau) const {
    if (d1) return d1(tau);
    if (!value) throw derivative_unavailable("channel has no value function");
    const double t = clamp_center(tau, kFdStep);
    return (value(t + kFdStep) - value(t - kFdStep)) / (2.0 * kFdStep);
}

double Channel::deriv2(double tau) const {
    if (d2) return d2(tau);
    if (!value) throw derivative_unavailable("channel has no value function");
    const double t = clamp_center(tau, kFdStep);
    return (value(t + kFdStep) - 2.0 * value(t) + value(t - kFdStep)) / (kFdStep * kFdStep);
}

Channel constant_channel(double v) {
    return Channel{[v](double) { return v; }, [](double) { return 0.0; },
                   [](double) { return 0.0; }};
}

std::string to_string(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::lz_linear: return "lz_linear";
        case ProtocolKind::roland_cerf: return "roland_cerf";
        case ProtocolKind::composite: return "composite";
        case ProtocolKind::superadiabatic_linear: return "superadiabatic_linear";
        case ProtocolKind::superadiabatic_tangent: return "superadiabatic_tangent";
        case ProtocolKind::custom: return "custom";
    }
    return "custom";
}

ProtocolKind protocol_kind_from_string(const std::string& name) {
    if (name == "lz_linear") return ProtocolKind::lz_linear;
    if (name == "roland_cerf") return ProtocolKind::roland_cerf;
    if (name == "composite") return ProtocolKind::composite;
    if (name == "superadiabatic_linear") return ProtocolKind::superadiabatic_linear;
    if (name == "superadiabatic_tangent") return ProtocolKind::superadiabatic_tangent;
    if (name == "custom") return ProtocolKind::custom;
    throw invalid_parameter("unknown protocol kind: " + name);
}

double ProtocolSchedule::param(const std::string& name, double fallback) const {
    for (const auto& [key, value] : params) {
        if (key == name) return value;
    }
    return fallback;
}

ControlSample sample(const ProtocolSchedule& schedule, double tau) {
    if (!(tau >= 0.0 && tau <= 1.0)) {
        throw domain_error("tau outside [0, 1]");
    }
    ControlSample s;
    s.gamma = schedule.gamma(tau);
    s.omega = schedule.omega(tau);
    s.omega_y = schedule.omega_y ? schedule.omega_y(tau) : 0.0;
    return s;
}

ProtocolSchedule make_custom_schedule(ScheduleFn gamma_fn, ScheduleFn omega_fn, double duration,
                                      std::vector<ImpulseRotation> impulses) {
    return make_custom_schedule(Channel{std::move(gamma_fn), nullptr, nullptr},
                                Channel{std::move(omega_fn), nullptr, nullptr}, duration,
                                std::move(impulses));
}

ProtocolSchedule make_custom_schedule(Channel gamma, Channel omega, double duration,
                                      std::vector<ImpulseRotation> impulses) {
    if (!(duration > 0.0)) {
        throw invalid_parameter("schedule duration must be positive");
    }
    if (!gamma.value || !omega.value) {
        throw invalid_parameter("schedule channels must be evaluable");
    }
    ProtocolSchedule s;
    s.kind = ProtocolKind::custom;
    s.duration = duration;
    s.gamma = gamma;
    s.omega = omega;
    s.impulses = std::move(impulses);
    s.base_gamma = std::move(gamma);
    s.base_omega = std::move(omega);
    s.params = {{"T", duration}};
    return s;
}

ProtocolSchedule time_reversed(const ProtocolSchedule& schedule) {
    ProtocolSchedule r;
    r.kind = ProtocolKind::custom;
    r.duration = schedule.duration;

    auto mirror = [](const Channel& c, double sign) {
        Channel m;
        if (c.value) m.value = [f = c.value, sign](double t) { return sign * f(1.0 - t); };
        if (c.d1) m.d1 = [f = c.d1, sign](double t) { return -sign * f(1.0 - t); };
        if (c.d2) m.d2 = [f = c.d2, sign](double t) { return sign * f(1.0 - t); };
        return m;
    };
    r.gamma = mirror(schedule.gamma, 1.0);
    r.omega = mirror(schedule.omega, 1.0);
    if (schedule.omega_y) {
        r.omega_y = [f = schedule.omega_y](double t) { return -f(1.0 - t); };
    }
    for (auto imp : schedule.impulses) {
        imp.location = imp.location == ImpulseLocation::start ? ImpulseLocation::end
                                                              : ImpulseLocation::start;
        r.impulses.push_back(imp);
    }
    r.base_gamma = mirror(schedule.base_gamma, 1.0);
    r.base_omega = mirror(schedule.base_omega, 1.0);
    if (schedule.frame_angle) {
        r.frame_angle = [f = schedule.frame_angle](double t) { return -f(1.0 - t); };
    }
    r.params = schedule.params;
    return r;
}

}  // namespace qdrive
