#include <doctest.h>

#include <cmath>
#include <complex>

#include "xxzlab/errors.hpp"
#include "xxzlab/lsw_dynamics.hpp"
#include "xxzlab/lsw_static.hpp"

using namespace xxz;

namespace {

ModelSpec model(int d, int L, double delta, double omega) {
    ModelSpec m;
    m.lattice.dim = d;
    for (int a = 0; a < d; ++a) m.lattice.extent[a] = L;
    m.delta = delta;
    m.omega = omega;
    return m;
}

}  // namespace

TEST_CASE("ramp shape F") {
    CHECK(ramp_shape(0.5) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ramp_shape(0.5 - 1e-12) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(ramp_shape(0.5 + 1e-12) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(ramp_shape(1e-3) <= 1e-300);
    CHECK(ramp_shape(1.0 - 1e-3) >= 1.0 - 1e-300);
    CHECK(ramp_shape(0.0) == 0.0);
    CHECK(ramp_shape(1.0) == 1.0);
    CHECK(ramp_shape(-2.0) == 0.0);
    CHECK(ramp_shape(3.0) == 1.0);

    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
        const double f = ramp_shape(i / 1000.0);
        CHECK(f >= prev);
        prev = f;
    }
}

TEST_CASE("schedule endpoints and midpoint") {
    RampSchedule r{10.0, 0.1, 20.0, 0.0};
    r.validate();
    CHECK(schedule_value(r, 0.0) == doctest::Approx(10.0));
    CHECK(schedule_value(r, 20.0) == doctest::Approx(0.1));
    CHECK(schedule_value(r, 35.0) == doctest::Approx(0.1));
    CHECK(schedule_value(r, 10.0) == doctest::Approx(5.05).epsilon(1e-14));

    CHECK_THROWS_AS((RampSchedule{0.1, 10.0, 20.0, 0.0}).validate(), config_error);
    CHECK_THROWS_AS((RampSchedule{10.0, 0.1, -1.0, 0.0}).validate(), config_error);
}

TEST_CASE("ground-state pairs match the Bogoliubov amplitudes") {
    SUBCASE("vacuum in the field-dominated limit") {
        const auto s = ground_state_pairs(model(2, 4, 1.0, 1e6));
        for (std::size_t i = 0; i < s.g.size(); ++i) {
            CHECK(s.g[i] <= 1e-10);
            CHECK(std::abs(s.f[i]) <= 1e-5);
        }
    }

    SUBCASE("closed-form k = 0 values at d=2, omega=10") {
        const auto m = model(2, 6, 1.0, 10.0);
        const auto s = ground_state_pairs(m);
        // A_0 = 12, B_0 = -2 evaluated independently of build_modes
        const double a0 = 12.0, b0 = -2.0;
        const double eps0 = std::sqrt(a0 * a0 - b0 * b0);
        const double v2 = (a0 / eps0 - 1.0) / 2.0;
        const double uv = b0 / (2.0 * eps0);
        CHECK(s.g[0] == doctest::Approx(v2).epsilon(1e-12));
        CHECK(s.f[0].real() == doctest::Approx(-uv).epsilon(1e-12));
        CHECK(s.f[0].imag() == 0.0);
    }
}

TEST_CASE("equilibrium is a fixed point of the equations of motion") {
    const auto m = model(2, 6, 1.0, 10.0);
    const auto s0 = ground_state_pairs(m);
    const auto obs0 = pair_state_observables(s0, make_mode_system(m));

    const auto res = evolve_constant(s0, m, 10.0, 0.004, 1.0);
    for (const auto& smp : res.series) {
        CHECK(smp.obs.jx == doctest::Approx(obs0.jx).epsilon(1e-8));
        CHECK(smp.obs.var_jz == doctest::Approx(obs0.var_jz).epsilon(1e-8));
    }
}

TEST_CASE("single harmonic mode: analytic rotation of F") {
    // B = 0 decouples G; F(t) = F(0) exp(-2 i A t)
    ModeSystem sys;
    const double a = 1.7;
    sys.a0 = {a};
    sys.b = {0.0};
    sys.negated = {0};
    sys.n_sites = 1.0;

    ModePairState s;
    s.g = {0.7};
    s.f = {std::complex<double>(0.3, 0.4)};

    const double t_total = 100.0 / a;
    const double dt = 0.002 / a;
    const long n = std::lround(t_total / dt);
    auto omega_at = [](double) { return 0.0; };
    double t = 0.0;
    for (long i = 0; i < n; ++i) {
        integrate_step(s, sys, omega_at, t, dt);
        t += dt;
    }
    CHECK(std::abs(s.f[0]) == doctest::Approx(0.5).epsilon(1e-10));  // |F| conserved
    const auto ref = std::complex<double>(0.3, 0.4) *
                     std::exp(std::complex<double>(0.0, -2.0 * a * t));
    CHECK(std::abs(s.f[0] - ref) <= 1e-7);
    CHECK(s.g[0] == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("integrate_step: dt -> 0 leaves the state unchanged to O(dt)") {
    const auto m = model(1, 4, 1.0, 2.0);
    auto s = ground_state_pairs(m);
    const auto sys = make_mode_system(m);
    const auto f0 = s.f[1];
    auto omega_at = [](double) { return 1.0; };  // off-equilibrium field
    integrate_step(s, sys, omega_at, 0.0, 1e-9);
    CHECK(std::abs(s.f[1] - f0) <= 1e-7);
}

TEST_CASE("fourth-order self-convergence on a short ramp") {
    const auto m = model(1, 4, 1.0, 5.0);
    const RampSchedule ramp{5.0, 0.5, 5.0, 0.0};
    const auto sys = make_mode_system(m);
    auto omega_at = [&ramp](double t) { return schedule_value(ramp, t); };

    auto run_with = [&](double dt) {
        auto s = ground_state_pairs(m.with_omega(ramp.omega_i));
        const long n = std::lround(ramp.tau / dt);
        double t = 0.0;
        for (long i = 0; i < n; ++i) {
            integrate_step(s, sys, omega_at, t, dt);
            t += dt;
        }
        return s;
    };

    const auto s1 = run_with(0.01);
    const auto s2 = run_with(0.005);
    const auto s3 = run_with(0.0025);
    const double e12 = std::abs(s1.f[0] - s2.f[0]);
    const double e23 = std::abs(s2.f[0] - s3.f[0]);
    CHECK(e12 / e23 == doctest::Approx(16.0).epsilon(0.3));
}

TEST_CASE("mode symmetry G_k = G_-k is preserved") {
    const auto m = model(2, 6, 1.0, 10.0);
    const auto sys = make_mode_system(m);
    auto s = ground_state_pairs(m);
    const RampSchedule ramp{10.0, 0.5, 8.0, 0.0};
    auto omega_at = [&ramp](double t) { return schedule_value(ramp, t); };
    double t = 0.0;
    for (int i = 0; i < 2000; ++i) {
        integrate_step(s, sys, omega_at, t, 0.004);
        t += 0.004;
        if (i % 200 == 0) {
            for (std::size_t k = 0; k < s.g.size(); ++k)
                CHECK(std::abs(s.g[k] - s.g[sys.negated[k]]) <= 1e-10);
        }
    }
}

TEST_CASE("evolve samples the ramp and lands on tau exactly") {
    const auto m = model(1, 6, 1.0, 10.0);
    const RampSchedule ramp{10.0, 0.5, 4.0, 1.0};
    const auto res = evolve(ground_state_pairs(m.with_omega(10.0)), m, ramp, 0.005, 0.5);
    REQUIRE(res.series.size() >= 9);
    CHECK(res.series.front().t == 0.0);
    bool has_tau = false;
    for (const auto& smp : res.series)
        if (smp.t == doctest::Approx(ramp.tau).epsilon(1e-12)) has_tau = true;
    CHECK(has_tau);
    CHECK(res.series.back().t >= ramp.tau + ramp.hold - 1e-9);

    // dt bound from the spec precondition is enforced
    CHECK_THROWS_AS(evolve(ground_state_pairs(m.with_omega(10.0)), m, ramp, 0.05, 0.5),
                    config_error);
}

TEST_CASE("quasi-adiabatic ramp approaches the static values") {
    // compact version of the adiabatic-limit study; the acceptance suite
    // runs the L=12 one
    const auto m = model(2, 6, 1.0, 1.0);
    const RampSchedule ramp{10.0, 0.5, 60.0, 0.0};
    const auto res = evolve(ground_state_pairs(m.with_omega(10.0)), m, ramp, 0.004, 1.0);
    const auto target = lsw_observables(build_modes(m.with_omega(0.5)), m.with_omega(0.5));
    CHECK(res.final_obs.xi2 == doctest::Approx(target.xi2).epsilon(0.05));
}
