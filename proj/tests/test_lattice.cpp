#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qdrive/adiabatic.hpp"
#include "qdrive/analysis.hpp"
#include "qdrive/errors.hpp"
#include "qdrive/lattice.hpp"
#include "qdrive/propagator.hpp"
#include "qdrive/protocols.hpp"
#include "test_util.hpp"

using namespace qdrive;
using std::numbers::pi;

namespace {
LatticeExportOptions small_opts(std::size_t n = 501) {
    LatticeExportOptions o;
    o.samples = n;
    return o;
}
}  // namespace

TEST_CASE("constant coupling maps to a two-recoil lattice depth") {
    const LatticeControls c = to_lattice_controls(lz_linear(0.5, 2.0), small_opts());
    for (double v : c.depth) CHECK(v == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(c.quasimomentum.front() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(c.quasimomentum.back() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.t_seconds.back() ==
          doctest::Approx(2.0 / kDefaultRecoilFrequency).epsilon(1e-12));
}

TEST_CASE("static drive needs no displacement or momentum correction") {
    const ProtocolSchedule s = make_custom_schedule(constant_channel(1.0),
                                                    constant_channel(0.5), 2.0);
    const LatticeControls c = to_lattice_controls(counterdiabatic_explicit(s), small_opts());
    for (std::size_t i = 0; i < c.beta.size(); ++i) {
        CHECK(std::abs(c.beta[i]) <= 1e-14);
        CHECK(c.quasimomentum_corrected[i] ==
              doctest::Approx(c.quasimomentum[i]).epsilon(1e-12));
        CHECK(c.depth[i] == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("round trip from controls back to the drive") {
    // plain schedule
    {
        const ProtocolSchedule s = lz_linear(0.5, 2.0);
        const LatticeControls c = to_lattice_controls(s, small_opts());
        for (std::size_t i = 0; i < c.depth.size(); ++i) {
            const double tau = static_cast<double>(i) / (c.depth.size() - 1);
            CHECK(std::abs(c.depth[i] / 4.0 - s.omega(tau)) <= 1e-12);
            CHECK(std::abs(4.0 * (c.quasimomentum[i] - 0.5) - s.gamma(tau)) <= 1e-12);
        }
    }
    // explicit counterdrive: amplitude and displacement encode (omega, alpha)
    {
        const ProtocolSchedule base = lz_linear(0.5, 2.0);
        const ProtocolSchedule e = counterdiabatic_explicit(base);
        const LatticeControls c = to_lattice_controls(e, small_opts());
        for (std::size_t i = 0; i < c.depth.size(); ++i) {
            const double tau = static_cast<double>(i) / (c.depth.size() - 1);
            const double w_rec = c.depth[i] / 4.0 * std::cos(c.beta[i]);
            const double a_rec = c.depth[i] / 4.0 * std::sin(c.beta[i]);
            CHECK(std::abs(w_rec - base.omega(tau)) <= 1e-12);
            CHECK(std::abs(a_rec - e.omega_y(tau)) <= 1e-12);
            CHECK(std::abs(4.0 * (c.quasimomentum[i] - 0.5) - base.gamma(tau)) <= 1e-12);
        }
    }
}

TEST_CASE("explicit tangent counterdrive: constant displacement, untouched momentum") {
    const double w = 0.5, T = 5.9;
    const ProtocolSchedule e = counterdiabatic_explicit(tangent_base(w, T));
    const LatticeControls c = to_lattice_controls(e, small_opts());
    const double beta_expected = std::atan2(-std::atan(2.0 / w) / T, w);
    double lo = 1e30, hi = -1e30;
    for (double b : c.beta) {
        lo = std::min(lo, b);
        hi = std::max(hi, b);
    }
    CHECK(hi - lo <= 1e-9);
    CHECK(c.beta.front() == doctest::Approx(beta_expected).epsilon(1e-12));
    for (std::size_t i = 0; i < c.beta.size(); ++i) {
        CHECK(c.quasimomentum_corrected[i] ==
              doctest::Approx(c.quasimomentum[i]).epsilon(1e-9));
    }
    // combined amplitude equals four times the transformed coupling
    const double wp = w * std::sqrt(1.0 + std::pow(std::atan(2.0 / w) / (T * w), 2));
    for (double v : c.depth) CHECK(v == doctest::Approx(4.0 * wp).epsilon(1e-12));
    // and the frame-angle jump at the ends matches the transform impulses
    const ProtocolSchedule t = superadiabatic_tangent(w, T);
    CHECK(t.impulses[0].area == doctest::Approx(-0.5 * c.beta.front()).epsilon(1e-12));
    CHECK(t.impulses[1].area == doctest::Approx(0.5 * c.beta.back()).epsilon(1e-12));
}

TEST_CASE("both counterdrive realizations produce the same final state") {
    for (double w : {0.25, 0.5, 0.55}) {
        for (double T : {1.0, 2.0, 5.0}) {
            const ProtocolSchedule base = lz_linear(w, T);
            const ProtocolSchedule two_lattice = counterdiabatic_explicit(base);
            const ProtocolSchedule single = superadiabatic_transform(base);
            const QuantumState init = eigensystem(-2.0, w).ground;
            const QuantumState a = propagate(two_lattice, init).final_state;
            const QuantumState b = propagate(single, init).final_state;
            CHECK(overlap2(a, b) >= 1.0 - 1e-9);
        }
    }
}

TEST_CASE("displacement conjugation identities hold to machine precision") {
    const VerificationReport r = displacement_unitary_check();
    CHECK(r.passed);
    CHECK(r.max_abs_error <= 1e-15);
}

TEST_CASE("export rejects vanishing coupling and bad options") {
    const ProtocolSchedule bad =
        make_custom_schedule([](double t) { return 4.0 * (t - 0.5); },
                             [](double) { return 0.0; }, 1.0);
    CHECK_THROWS_AS(to_lattice_controls(bad), invalid_parameter);

    LatticeExportOptions o;
    o.samples = 1;
    CHECK_THROWS_AS(to_lattice_controls(lz_linear(0.5, 1.0), o), invalid_parameter);
    o = LatticeExportOptions{};
    o.slew_duration = -1.0;
    CHECK_THROWS_AS(to_lattice_controls(lz_linear(0.5, 1.0), o), invalid_parameter);
}

TEST_CASE("slew materialization preserves the impulse areas") {
    const double w = 0.5, T = 5.9;
    const ProtocolSchedule s = superadiabatic_tangent(w, T);
    LatticeExportOptions o = small_opts(101);
    o.slew_duration = 0.01;
    const LatticeControls c = to_lattice_controls(s, o);
    // two extra samples at each end
    CHECK(c.t_seconds.size() == 105);
    CHECK(c.t_seconds.front() == 0.0);
    // leading excursion: Gamma area = 4*(q_exc - q_first)*slew
    const double q_first_protocol = c.quasimomentum[2];
    const double q_exc = c.quasimomentum[0];
    CHECK(4.0 * (q_exc - q_first_protocol) * o.slew_duration ==
          doctest::Approx(s.impulses[0].area).epsilon(1e-12));
    const std::size_t n = c.quasimomentum.size();
    const double q_last_protocol = c.quasimomentum[n - 3];
    const double q_exc_end = c.quasimomentum[n - 1];
    CHECK(4.0 * (q_exc_end - q_last_protocol) * o.slew_duration ==
          doctest::Approx(s.impulses[1].area).epsilon(1e-12));
}

TEST_CASE("waveform files are deterministic and carry metadata") {
    const ProtocolSchedule s = superadiabatic_tangent(0.5, 5.9);
    LatticeExportOptions o = small_opts(64);
    const LatticeControls c = to_lattice_controls(s, o);

    auto slurp = [](const std::string& p) {
        std::ifstream f(p);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };
    const std::string p1 = "wave_test_a.csv";
    const std::string p2 = "wave_test_b.csv";
    write_waveform_csv(c, p1);
    write_waveform_csv(to_lattice_controls(s, o), p2);
    const std::string a = slurp(p1);
    const std::string b = slurp(p2);
    CHECK(a == b);
    CHECK(a.rfind("t_seconds,V0_recoils,q,q_prime,beta", 0) == 0);

    const std::string meta = slurp(p1 + ".json");
    CHECK(meta.find("omega_rec_rad_per_s") != std::string::npos);
    CHECK(meta.find("superadiabatic_tangent") != std::string::npos);
    CHECK(meta.find("\"impulses\"") != std::string::npos);
    std::remove(p1.c_str());
    std::remove((p1 + ".json").c_str());
    std::remove(p2.c_str());
    std::remove((p2 + ".json").c_str());
}
