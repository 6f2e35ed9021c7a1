#include <doctest.h>

#include <cmath>
#include <vector>

#include "xxzlab/errors.hpp"
#include "xxzlab/lsw_static.hpp"

using namespace xxz;

namespace {

ModelSpec model(int d, int L, double delta, double omega) {
    ModelSpec m;
    m.lattice.dim = d;
    for (int a = 0; a < d; ++a) m.lattice.extent[a] = L;
    m.coupling = 1.0;
    m.delta = delta;
    m.omega = omega;
    return m;
}

}  // namespace

TEST_CASE("k=0 mode closed forms") {
    // d=2, delta=1, omega=1: A_0 = 3, B_0 = -2, eps_0 = sqrt(5)
    const auto modes = build_modes(model(2, 8, 1.0, 1.0));
    CHECK(modes[0].a_k == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(modes[0].b_k == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(modes[0].eps_k == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));

    // low field: eps_0 = sqrt(omega (2 gamma_0 + omega)), near 2 sqrt(omega)
    const auto low = build_modes(model(2, 8, 1.0, 0.01));
    CHECK(low[0].eps_k == doctest::Approx(std::sqrt(0.01 * 4.01)).epsilon(1e-13));
    CHECK(low[0].eps_k / (2.0 * std::sqrt(0.01)) == doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("field-dominated limit") {
    for (int d : {1, 2, 3}) {
        const auto modes = build_modes(model(d, 4, 0.5, 1e6));
        for (const auto& m : modes) {
            CHECK(std::abs(m.v_k) <= 1e-5);
            CHECK(m.u_k == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(m.eps_k / m.a_k == doctest::Approx(1.0).epsilon(1e-11));
            CHECK(m.a_k == doctest::Approx(1e6).epsilon(1e-5));
        }
    }
}

TEST_CASE("build_modes signals gapless modes") {
    CHECK_THROWS_AS(build_modes(model(2, 4, 1.0, 0.0)), numerical_error);
    CHECK_THROWS_AS(build_modes(model(2, 4, 0.3, 0.0)), numerical_error);
    CHECK_THROWS_AS(build_modes(model(1, 6, 0.0, 0.0)), numerical_error);
}

TEST_CASE("Bogoliubov invariants across the parameter grid") {
    for (int d : {1, 2, 3}) {
        for (double delta : {-0.5, 0.0, 0.5, 1.0}) {
            for (double omega : {1e-4, 0.1, 1.0, 10.0}) {
                const auto modes = build_modes(model(d, 6, delta, omega));
                for (const auto& m : modes) {
                    CHECK(m.u_k * m.u_k - m.v_k * m.v_k == doctest::Approx(1.0).epsilon(1e-12));
                    CHECK(m.eps_k * m.eps_k ==
                          doctest::Approx(m.a_k * m.a_k - m.b_k * m.b_k).epsilon(1e-12));
                    CHECK(m.a_k >= std::abs(m.b_k));
                    CHECK(m.eps_k > 0.0);
                }
            }
        }
    }
}

TEST_CASE("observables: closed form and dual-route consistency") {
    const auto m = model(2, 100, 1.0, 1.0);
    const auto modes = build_modes(m);
    const auto obs = lsw_observables(modes, m);
    const double n = 1e4;

    // Var(J^z)/N = (1/4) sqrt(1/5) at omega = J
    CHECK(obs.var_jz / n == doctest::Approx(0.25 * std::sqrt(0.2)).epsilon(1e-12));

    // minimal-uncertainty product Var(J^y) Var(J^z) = N^2/16
    CHECK(obs.var_jy * obs.var_jz == doctest::Approx(n * n / 16.0).epsilon(1e-10));

    // <J^x> two routes: N/2 - sum v^2 vs N - sum A/(2 eps)
    double route2 = n;
    for (const auto& mode : modes) route2 -= 0.5 * mode.a_k / mode.eps_k;
    CHECK(obs.jx == doctest::Approx(route2).epsilon(1e-10));

    CHECK(obs.cov_yz == 0.0);
    CHECK(obs.fq == doctest::Approx(4.0 * obs.var_jy / n).epsilon(1e-14));
}

TEST_CASE("minimal-uncertainty product on a parameter grid") {
    for (int d : {1, 2, 3}) {
        for (double delta : {0.0, 1.0}) {
            for (double omega : {0.01, 0.5, 5.0}) {
                const auto m = model(d, 6, delta, omega);
                const auto obs = lsw_observables(build_modes(m), m);
                const double n = m.lattice.n_sites();
                CHECK(obs.var_jy * obs.var_jz == doctest::Approx(n * n / 16.0).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("coherent-state limit at omega = 1e4") {
    const auto m = model(2, 100, 1.0, 1e4);
    const auto obs = lsw_observables(build_modes(m), m);
    const double n = 1e4;
    CHECK(obs.jx / n == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(obs.var_jz / n == doctest::Approx(0.25).epsilon(1e-3));
    CHECK(obs.xi2 == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("gap reference values and asymptotes") {
    // d=2: gap / (2 J sqrt(omega)) within 0.3% at omega = 1e-4
    const double g2 = lsw_gap(model(2, 100, 1.0, 1e-4));
    CHECK(g2 == doctest::Approx(0.0200).epsilon(1e-3));
    CHECK(g2 / (2.0 * std::sqrt(1e-4)) == doctest::Approx(1.0).epsilon(3e-3));

    // d=3: gap / sqrt(z omega) -> 1 with z = 6
    const double g3 = lsw_gap(model(3, 20, 1.0, 1e-4));
    CHECK(g3 / std::sqrt(6.0 * 1e-4) == doctest::Approx(1.0).epsilon(1e-4));

    // monotone in omega
    double prev = 0.0;
    for (double w : {1e-3, 1e-2, 0.1, 1.0, 10.0}) {
        const double g = lsw_gap(model(2, 12, 1.0, w));
        CHECK(g > prev);
        prev = g;
    }
}

TEST_CASE("gap equals the exhaustive minimum over the grid") {
    const auto m = model(2, 12, 1.0, 10.0);
    const auto modes = build_modes(m);
    double ref = 1e300;
    for (const auto& mode : modes)
        ref = std::min(ref, std::sqrt(mode.a_k * mode.a_k - mode.b_k * mode.b_k));
    CHECK(lsw_gap(m) == doctest::Approx(ref).epsilon(1e-14));
}

TEST_CASE("adiabatic time estimate") {
    const auto m = model(2, 32, 1.0, 1.0);
    // (z omega_f)^-1 = 25 at omega_f = 1e-2
    CHECK(adiabatic_time_estimate(m, 1e-2) == doctest::Approx(25.0).epsilon(1e-2));
    // doubling omega_f halves the estimate (asymptotically)
    const double r = adiabatic_time_estimate(m, 2e-2) / adiabatic_time_estimate(m, 1e-2);
    CHECK(r == doctest::Approx(0.5).epsilon(1e-2));
    // omega_f = J/N with N = 100: tau ~ N/z = 25
    CHECK(adiabatic_time_estimate(m, 1.0 / 100.0) == doctest::Approx(25.0).epsilon(1e-2));
    CHECK_THROWS_AS(adiabatic_time_estimate(m, 0.0), config_error);
}

TEST_CASE("sweep basics") {
    const auto base = model(2, 24, 1.0, 1.0);

    SUBCASE("empty grid gives an empty table") {
        CHECK(sweep(base, {}).empty());
    }

    SUBCASE("rows are produced and xi2 decreases with decreasing omega") {
        std::vector<double> omegas;
        for (int i = 0; i < 20; ++i)
            omegas.push_back(std::pow(10.0, -4.0 + 5.0 * i / 19.0));
        const auto rows = sweep(base, omegas);
        REQUIRE(rows.size() == 20);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            REQUIRE(rows[i].obs.has_value());
            CHECK(rows[i].obs->xi2 >= rows[i - 1].obs->xi2);  // omegas ascend
        }
    }

    SUBCASE("per-row failures are recorded, sweep continues") {
        const std::vector<double> omegas{0.5, 0.0, 2.0};
        const auto rows = sweep(base, omegas);
        REQUIRE(rows.size() == 3);
        CHECK(rows[0].obs.has_value());
        CHECK_FALSE(rows[1].obs.has_value());
        CHECK(rows[1].error.find("gapless") != std::string::npos);
        CHECK(rows[2].obs.has_value());
    }

    SUBCASE("L grid multiplies the table") {
        const std::vector<double> omegas{0.5, 1.0};
        const std::vector<int> lengths{8, 12};
        const auto rows = sweep(base, omegas, lengths);
        REQUIRE(rows.size() == 4);
        CHECK(rows[0].model.lattice.extent[0] == 8);
        CHECK(rows[3].model.lattice.extent[0] == 12);
    }
}

TEST_CASE("d=1 squeezing parameter levels off while d=2 keeps falling") {
    // no SSB in d=1: within LSW both Var(J^z) and <J^x>^2 vanish and xi2
    // tends to a nonzero level, in contrast with d >= 2
    std::vector<double> omegas;
    for (int i = 0; i < 8; ++i)
        omegas.push_back(std::pow(10.0, -2.3 + 1.3 * i / 7.0));

    const auto rows1 = sweep(model(1, 100, 1.0, 1.0), omegas);
    const auto rows2 = sweep(model(2, 100, 1.0, 1.0), omegas);
    double lo1 = 1e300, hi1 = 0.0;
    for (const auto& r : rows1) {
        REQUIRE(r.obs.has_value());
        lo1 = std::min(lo1, r.obs->xi2);
        hi1 = std::max(hi1, r.obs->xi2);
    }
    CHECK(lo1 > 0.05);
    CHECK(hi1 / lo1 < 1.6);  // flat-ish plateau over 1.3 decades
    // d=2 drops by roughly the square root of the omega ratio instead
    CHECK(rows2.front().obs->xi2 / rows2.back().obs->xi2 < 0.35);
}

TEST_CASE("power-law fit") {
    SUBCASE("exact synthetic input") {
        std::vector<double> x, y;
        for (int i = 0; i < 12; ++i) {
            x.push_back(std::pow(10.0, -4.0 + 2.0 * i / 11.0));
            y.push_back(3.7 * std::pow(x.back(), 0.75));
        }
        const auto fit = fit_power_law(x, y, 1e-4, 1e-2);
        CHECK(fit.exponent == doctest::Approx(0.75).epsilon(1e-12));
        CHECK(fit.exponent_stderr <= 1e-10);
        CHECK(std::exp(fit.log_prefactor) == doctest::Approx(3.7).epsilon(1e-10));
    }

    SUBCASE("rejects bad input") {
        const std::vector<double> x{1e-4, 1e-3, 1e-2};
        const std::vector<double> y_neg{1.0, -1.0, 1.0};
        const std::vector<double> y_ok{1.0, 2.0, 3.0};
        CHECK_THROWS_AS(fit_power_law(x, y_neg, 1e-4, 1e-2), config_error);
        CHECK_THROWS_AS(fit_power_law(x, y_ok, 1e-4, 2e-4), config_error);  // too few points
    }

    SUBCASE("LSW Var(J^z) scales as sqrt(omega)") {
        std::vector<double> omegas, var2, xi3;
        for (int i = 0; i < 16; ++i)
            omegas.push_back(std::pow(10.0, -4.0 + 2.0 * i / 15.0));
        const auto rows2 = sweep(model(2, 100, 1.0, 1.0), omegas);
        const auto rows3 = sweep(model(3, 40, 0.0, 1.0), omegas);
        std::vector<double> w;
        for (std::size_t i = 0; i < omegas.size(); ++i) {
            w.push_back(omegas[i]);
            var2.push_back(rows2[i].obs->var_jz);
            xi3.push_back(rows3[i].obs->xi2);
        }
        const auto f2 = fit_power_law(w, var2, 1e-4, 1e-2);
        CHECK(f2.exponent == doctest::Approx(0.5).epsilon(0.04));  // lambda = 0.50 +- 0.02
        const auto f3 = fit_power_law(w, xi3, 1e-4, 1e-2);
        CHECK(f3.exponent == doctest::Approx(0.5).epsilon(0.04));
    }
}
