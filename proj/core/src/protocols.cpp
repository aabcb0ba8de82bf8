#include "qdrive/protocols.hpp"

#include <cmath>
#include <numbers>

#include "qdrive/errors.hpp"

namespace qdrive {

namespace {

using std::numbers::pi;

void require(bool ok, const char* msg) {
    if (!ok) throw invalid_parameter(msg);
}

// Counterdiabatic machinery shared by the transform and the explicit-sigma_y
// construction. All inputs are tau-space channel evaluations; derivatives are
// converted to physical time with the duration.
struct CdTerms {
    double alpha;     // (1/2) dphi/dt
    double beta;      // arctan(alpha / omega)
    double beta_dot;  // d beta / dt
};

CdTerms cd_terms(const ProtocolSchedule& base, double tau) {
    const double T = base.duration;
    const double g = base.gamma(tau);
    const double w = base.omega(tau);
    if (!(w > 0.0)) {
        throw singular_transformation("transform requires omega(tau) > 0");
    }
    const double gd = base.gamma.deriv1(tau) / T;
    const double wd = base.omega.deriv1(tau) / T;
    const double gdd = base.gamma.deriv2(tau) / (T * T);
    const double wdd = base.omega.deriv2(tau) / (T * T);

    const double num = g * wd - w * gd;          // N
    const double den = g * g + w * w;            // D
    const double num_dot = g * wdd - w * gdd;    // dN/dt (cross terms cancel)
    const double den_dot = 2.0 * (g * gd + w * wd);

    CdTerms t;
    t.alpha = num / (2.0 * den);
    t.beta = std::atan(t.alpha / w);
    const double alpha_dot = (num_dot * den - num * den_dot) / (2.0 * den * den);
    t.beta_dot = (alpha_dot * w - t.alpha * wd) / (w * w + t.alpha * t.alpha);
    return t;
}

void check_coupling_positive(const ProtocolSchedule& base) {
    constexpr int kGrid = 1000;
    for (int i = 0; i <= kGrid; ++i) {
        const double tau = static_cast<double>(i) / kGrid;
        if (!(base.omega(tau) > 0.0)) {
            throw singular_transformation("transform requires omega(tau) > 0 on [0, 1]");
        }
    }
}

}  // namespace

ProtocolSchedule lz_linear(double omega, double duration) {
    require(omega > 0.0, "lz_linear requires omega > 0");
    require(duration > 0.0, "lz_linear requires T > 0");
    ProtocolSchedule s;
    s.kind = ProtocolKind::lz_linear;
    s.duration = duration;
    s.gamma = Channel{[](double tau) { return 4.0 * (tau - 0.5); }, [](double) { return 4.0; },
                      [](double) { return 0.0; }};
    s.omega = constant_channel(omega);
    s.base_gamma = s.gamma;
    s.base_omega = s.omega;
    s.params = {{"omega", omega}, {"T", duration}};
    return s;
}

ProtocolSchedule roland_cerf(double omega, double epsilon) {
    require(omega > 0.0, "roland_cerf requires omega > 0");
    require(epsilon > 0.0 && epsilon < 1.0, "roland_cerf requires 0 < epsilon < 1");

    const double duration = 1.0 / (epsilon * omega * std::sqrt(4.0 + omega * omega));
    const double a = 4.0 * epsilon * omega * omega * duration;
    const double b = 16.0 * epsilon * epsilon * omega * omega * duration * duration;
    // the square-root argument must stay positive out to the endpoints
    for (double tau : {0.0, 1.0}) {
        const double s = tau - 0.5;
        if (!(1.0 - b * s * s > 0.0)) {
            throw invalid_parameter("roland_cerf sweep undefined at tau = " +
                                    std::to_string(tau));
        }
    }

    ProtocolSchedule s;
    s.kind = ProtocolKind::roland_cerf;
    s.duration = duration;
    s.gamma = Channel{
        [a, b](double tau) {
            const double x = tau - 0.5;
            return a * x / std::sqrt(1.0 - b * x * x);
        },
        [a, b](double tau) {
            const double x = tau - 0.5;
            return a * std::pow(1.0 - b * x * x, -1.5);
        },
        [a, b](double tau) {
            const double x = tau - 0.5;
            return 3.0 * a * b * x * std::pow(1.0 - b * x * x, -2.5);
        }};
    s.omega = constant_channel(omega);
    s.base_gamma = s.gamma;
    s.base_omega = s.omega;
    s.params = {{"omega", omega}, {"epsilon", epsilon}, {"T", duration}};
    return s;
}

ProtocolSchedule composite_pulse(double omega, double gamma_max, double overlap_ini_fin,
                                 bool ideal) {
    require(omega > 0.0, "composite_pulse requires omega > 0");
    require(overlap_ini_fin >= 0.0 && overlap_ini_fin < 1.0,
            "composite_pulse requires overlap in [0, 1)");
    if (!ideal) {
        require(gamma_max > 0.0, "finite emulation requires gamma_max > 0");
    }

    const double plateau = std::acos(overlap_ini_fin) / omega;  // physical time at Gamma = 0
    const double area = pi / 4.0;

    ProtocolSchedule s;
    s.kind = ProtocolKind::composite;
    s.base_omega = constant_channel(omega);
    s.omega = s.base_omega;

    double tau0 = 0.0;
    if (ideal) {
        s.duration = plateau;
        s.gamma = Channel{[](double tau) {
                              // plateau at zero; the sweep boundary values sit at the ends
                              if (tau == 0.0) return -2.0;
                              if (tau == 1.0) return 2.0;
                              return 0.0;
                          },
                          nullptr, nullptr};
        s.impulses = {{ImpulseLocation::start, ImpulseAxis::z, area},
                      {ImpulseLocation::end, ImpulseAxis::z, -area}};
    } else {
        // T*tau0 = area/gamma_max together with T*(1 - 2*tau0) = plateau
        const double gm = gamma_max;
        s.duration = plateau + 2.0 * area / gm;
        tau0 = area / (gm * s.duration);
        s.gamma = Channel{[gm, tau0](double tau) {
                              if (tau == 0.0) return -2.0;
                              if (tau == 1.0) return 2.0;
                              if (tau < tau0) return gm;
                              if (tau > 1.0 - tau0) return -gm;
                              return 0.0;
                          },
                          nullptr, nullptr};
    }
    s.base_gamma = s.gamma;

    if ((!ideal || gamma_max > 0.0) && gamma_max < 10.0 * omega) {
        s.warnings.push_back("gamma_max below 10*omega: exact-transfer guarantee void");
    }
    s.params = {{"omega", omega},
                {"gamma_max", gamma_max},
                {"tau0", tau0},
                {"overlap", overlap_ini_fin},
                {"T", s.duration}};
    return s;
}

ProtocolSchedule tangent_base(double omega, double duration) {
    require(omega > 0.0, "tangent_base requires omega > 0");
    require(duration > 0.0, "tangent_base requires T > 0");
    const double a = std::atan(2.0 / omega);
    ProtocolSchedule s;
    s.kind = ProtocolKind::custom;
    s.duration = duration;
    s.gamma = Channel{[omega, a](double tau) { return omega * std::tan(2.0 * (tau - 0.5) * a); },
                      [omega, a](double tau) {
                          const double c = std::cos(2.0 * (tau - 0.5) * a);
                          return 2.0 * a * omega / (c * c);
                      },
                      [omega, a](double tau) {
                          const double u = 2.0 * (tau - 0.5) * a;
                          const double c = std::cos(u);
                          return 8.0 * a * a * omega * std::tan(u) / (c * c);
                      }};
    s.omega = constant_channel(omega);
    s.base_gamma = s.gamma;
    s.base_omega = s.omega;
    s.params = {{"omega", omega}, {"T", duration}};
    return s;
}

ProtocolSchedule superadiabatic_transform(const ProtocolSchedule& base) {
    check_coupling_positive(base);

    // channels close over a copy of the base schedule; cheap (shared fns)
    ProtocolSchedule s;
    s.kind = base.kind == ProtocolKind::lz_linear ? ProtocolKind::superadiabatic_linear
                                                  : ProtocolKind::custom;
    s.duration = base.duration;
    s.gamma = Channel{[base](double tau) { return base.gamma(tau) - 0.5 * cd_terms(base, tau).beta_dot; },
                      nullptr, nullptr};
    s.omega = Channel{[base](double tau) {
                          const double w = base.omega(tau);
                          return std::hypot(w, cd_terms(base, tau).alpha);
                      },
                      nullptr, nullptr};
    const double beta0 = cd_terms(base, 0.0).beta;
    const double beta1 = cd_terms(base, 1.0).beta;
    s.impulses = {{ImpulseLocation::start, ImpulseAxis::z, -0.5 * beta0},
                  {ImpulseLocation::end, ImpulseAxis::z, 0.5 * beta1}};
    s.base_gamma = base.gamma;
    s.base_omega = base.omega;
    s.frame_angle = [base](double tau) { return cd_terms(base, tau).beta; };
    s.params = base.params;
    return s;
}

ProtocolSchedule superadiabatic_linear(double omega, double duration) {
    ProtocolSchedule s = superadiabatic_transform(lz_linear(omega, duration));
    s.kind = ProtocolKind::superadiabatic_linear;
    return s;
}

ProtocolSchedule superadiabatic_tangent(double omega, double duration) {
    ProtocolSchedule base = tangent_base(omega, duration);
    const double a = std::atan(2.0 / omega);
    const double alpha = -a / duration;               // constant (1/2) dphi/dt
    const double beta = std::atan(alpha / omega);     // constant frame angle
    const double coupling = omega * std::sqrt(1.0 + (a / (duration * omega)) * (a / (duration * omega)));

    ProtocolSchedule s;
    s.kind = ProtocolKind::superadiabatic_tangent;
    s.duration = duration;
    s.gamma = base.gamma;  // the Gamma correction vanishes for this base
    s.omega = constant_channel(coupling);
    s.impulses = {{ImpulseLocation::start, ImpulseAxis::z, -0.5 * beta},
                  {ImpulseLocation::end, ImpulseAxis::z, 0.5 * beta}};
    s.base_gamma = base.gamma;
    s.base_omega = base.omega;
    s.frame_angle = [beta](double) { return beta; };
    s.params = {{"omega", omega}, {"T", duration}, {"omega_prime", coupling}};
    return s;
}

ProtocolSchedule counterdiabatic_explicit(const ProtocolSchedule& base) {
    check_coupling_positive(base);
    ProtocolSchedule s;
    s.kind = ProtocolKind::custom;
    s.duration = base.duration;
    s.gamma = base.gamma;
    s.omega = base.omega;
    s.omega_y = [base](double tau) { return cd_terms(base, tau).alpha; };
    s.base_gamma = base.gamma;
    s.base_omega = base.omega;
    s.params = base.params;
    return s;
}

}  // namespace qdrive
