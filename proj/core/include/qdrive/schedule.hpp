#ifndef QDRIVE_SCHEDULE_HPP
#define QDRIVE_SCHEDULE_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qdrive/state.hpp"

namespace qdrive {

// One sample of the control Hamiltonian H = gamma*sz + omega*sx + omega_y*sy.
// omega_y is nonzero only for schedules that carry the counterdiabatic term
// as an explicit sigma_y field.
struct ControlSample {
    double gamma = 0.0;
    double omega = 0.0;
    double omega_y = 0.0;
};

enum class ImpulseLocation { start, end };
enum class ImpulseAxis { z };

// Instantaneous z-rotation with pulse area A = integral of Gamma dt.
// Applied as the exact unitary exp(-i * A * sigma_z), never time-discretized.
struct ImpulseRotation {
    ImpulseLocation location = ImpulseLocation::start;
    ImpulseAxis axis = ImpulseAxis::z;
    double area = 0.0;
};

using ScheduleFn = std::function<double(double)>;

// A control channel as a function of tau in [0, 1]. Derivatives (with respect
// to tau) are analytic when supplied; otherwise they fall back to central
// differences with step 1e-6.
struct Channel {
    ScheduleFn value;
    ScheduleFn d1;  // dX/dtau, may be null
    ScheduleFn d2;  // d2X/dtau2, may be null

    bool analytic() const { return static_cast<bool>(d1) && static_cast<bool>(d2); }

    double operator()(double tau) const { return value(tau); }
    double deriv1(double tau) const;
    double deriv2(double tau) const;
};

Channel constant_channel(double v);

enum class ProtocolKind {
    lz_linear,
    roland_cerf,
    composite,
    superadiabatic_linear,
    superadiabatic_tangent,
    custom,
};

std::string to_string(ProtocolKind kind);
ProtocolKind protocol_kind_from_string(const std::string& name);

// A complete driving protocol: realized control channels over tau in [0, 1],
// total duration T, and instantaneous end-pulses. Immutable after
// construction; all members are value types, so copies are independent.
//
// For transformed (superadiabatic) schedules, gamma/omega are the realized
// drive (Gamma', omega') while base_gamma/base_omega retain the untransformed
// Hamiltonian that defines state preparation and the measurement basis, and
// frame_angle is the z-rotation angle beta(tau) relating the two frames.
struct ProtocolSchedule {
    ProtocolKind kind = ProtocolKind::custom;
    double duration = 0.0;  // T, in units of 1/omega_rec

    Channel gamma;
    Channel omega;
    ScheduleFn omega_y;  // explicit sigma_y channel; null means 0

    std::vector<ImpulseRotation> impulses;

    Channel base_gamma;
    Channel base_omega;
    ScheduleFn frame_angle;  // beta(tau); null means 0

    std::vector<std::pair<std::string, double>> params;
    std::vector<std::string> warnings;

    bool has_explicit_sigma_y() const { return static_cast<bool>(omega_y); }
    double frame_angle_at(double tau) const { return frame_angle ? frame_angle(tau) : 0.0; }
    double param(const std::string& name, double fallback = 0.0) const;
};

// Evaluates the drive at tau in [0, 1]. Impulses are not folded into samples.
// Throws domain_error outside [0, 1].
ControlSample sample(const ProtocolSchedule& schedule, double tau);

// Wraps caller-supplied channel functions into a schedule. No smoothness is
// assumed; derivatives, where needed downstream, use central differences.
// Throws invalid_parameter for T <= 0.
ProtocolSchedule make_custom_schedule(ScheduleFn gamma_fn, ScheduleFn omega_fn, double duration,
                                      std::vector<ImpulseRotation> impulses = {});

// Same, with analytic derivative callbacks for both channels.
ProtocolSchedule make_custom_schedule(Channel gamma, Channel omega, double duration,
                                      std::vector<ImpulseRotation> impulses = {});

// Mirror of the schedule in tau: channels evaluated at 1-tau, sigma_y channel
// negated, impulses swapped between the ends (areas kept). Propagating the
// reversed schedule on the conjugated final state and conjugating the result
// undoes the forward evolution; see the propagator tests.
ProtocolSchedule time_reversed(const ProtocolSchedule& schedule);

}  // namespace qdrive

#endif
