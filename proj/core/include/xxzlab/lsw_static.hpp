#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xxzlab/lattice.hpp"
#include "xxzlab/model.hpp"
#include "xxzlab/observables.hpp"

namespace xxz {

// Static linear spin-wave theory. The quadratic Hamiltonian per momentum is
//   A_k = gamma_0 + (delta - 1) * gamma_k / 2 + omega
//   B_k = -(delta + 1) * gamma_k / 2
// (B_k with the sign that follows from the Holstein-Primakoff expansion of
// the ferromagnetic-in-plane Hamiltonian; B_0 < 0), diagonalized by
//   eps_k = sqrt(A_k^2 - B_k^2),  u_k^2 - v_k^2 = 1,  v_k = sign(B_k) sqrt(u_k^2 - 1).
struct BogoliubovMode {
    Momentum k;
    double a_k = 0.0;
    double b_k = 0.0;
    double eps_k = 0.0;
    double u_k = 1.0;
    double v_k = 0.0;
};

std::vector<BogoliubovMode> build_modes(const ModelSpec& model);
std::vector<BogoliubovMode> build_modes(const ModelSpec& model, const Lattice& lattice);

// Equilibrium observables:
//   <J^x>    = N/2 - sum_k v_k^2
//   Var(J^z) = (N/4) (A_0 + B_0) / eps_0   -> (N/4) sqrt(omega / ((1+delta) gamma_0 + omega))
//   Var(J^y) = (N/4) (A_0 - B_0) / eps_0
//   xi2      = N Var(J^z) / <J^x>^2,  fq = 4 Var(J^y) / N,  gap = min_k eps_k
SpinObservables lsw_observables(const std::vector<BogoliubovMode>& modes, const ModelSpec& model);

double lsw_gap(const ModelSpec& model);

// Adiabatic-time estimate tau * J ~ (min gap)^-2, the gap minimized over
// omega in [omega_f, inf).
double adiabatic_time_estimate(const ModelSpec& model, double omega_f);

struct SweepRow {
    ModelSpec model;
    std::optional<SpinObservables> obs;
    std::string error;  // non-empty when this row failed
};

// Cartesian sweep over lengths x omegas with (d, delta) fixed by the base
// model. Rows are deterministic in loop order; per-row failures are recorded
// and the sweep continues.
std::vector<SweepRow> sweep(const ModelSpec& base, std::span<const double> omegas,
                            std::span<const int> lengths = {});

struct PowerLawFit {
    double exponent = 0.0;
    double log_prefactor = 0.0;
    double exponent_stderr = 0.0;
    int n_points = 0;
};

// Ordinary least squares on (log x, log y) restricted to x in [xlo, xhi].
// Requires >= 3 points in the window and positive values throughout.
PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y, double xlo,
                          double xhi);

}  // namespace xxz
