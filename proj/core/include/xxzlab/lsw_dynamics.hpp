#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "xxzlab/lattice.hpp"
#include "xxzlab/lsw_static.hpp"
#include "xxzlab/model.hpp"
#include "xxzlab/observables.hpp"

namespace xxz {

// Smooth field ramp omega(t) = omega_i + F(t/tau) * (omega_f - omega_i) with
// F flat to all orders at both ends; omega(t) = omega_f for t > tau.
struct RampSchedule {
    double omega_i = 0.0;
    double omega_f = 0.0;
    double tau = 0.0;
    double hold = 0.0;

    void validate() const;
};

double ramp_shape(double x);  // F(x): 0 for x <= 0, 1 for x >= 1, F(1/2) = 1/2
double schedule_value(const RampSchedule& ramp, double t);

// Gaussian-state mode pairs G_k = <b_k^dag b_k>, F_k = <b_k b_-k>, indexed
// like Lattice::momenta.
struct ModePairState {
    std::vector<double> g;
    std::vector<std::complex<double>> f;
};

// The mode-diagonal ODE system. Only A_k(t) = a0_k + omega(t) depends on
// time. literal_k0 keeps the doubled k = 0 right-hand side that the
// equations-of-motion write-up carries as a (1 + delta_{k,0}) prefactor; the
// default is the derivation-consistent form without it.
struct ModeSystem {
    std::vector<double> a0;
    std::vector<double> b;
    std::vector<int> negated;
    double n_sites = 0.0;
    bool literal_k0 = false;
};

ModeSystem make_mode_system(const ModelSpec& base, bool literal_k0 = false);

// Equilibrium pairs G_k = v_k^2, F_k = -u_k v_k at the model's field; a fixed
// point of the equations of motion at constant omega.
ModePairState ground_state_pairs(const ModelSpec& model);

// One classical fourth-order Runge-Kutta step of the full mode system.
void integrate_step(ModePairState& state, const ModeSystem& sys,
                    const std::function<double(double)>& omega_at, double t, double dt);

// d G_k/dt = -2 B_k Im F_k; d F_k/dt = -i [2 A_k(t) F_k + B_k (1 + G_k + G_-k)]
// evaluated into (dg, df); exposed for step-size studies.
void mode_derivatives(const ModeSystem& sys, double omega, const ModePairState& s,
                      std::vector<double>& dg, std::vector<std::complex<double>>& df);

// Instantaneous observables of a mode-pair state:
//   <J^x> = N/2 - sum_k G_k,  Var(J^z) = (N/4)(1 + 2 G_0 - 2 Re F_0),
//   Var(J^y) = (N/4)(1 + 2 G_0 + 2 Re F_0),  xi2 = N Var(J^z) / <J^x>^2.
SpinObservables pair_state_observables(const ModePairState& state, const ModeSystem& sys);

struct RampSample {
    double t = 0.0;
    double omega = 0.0;
    SpinObservables obs;
};

struct RampResult {
    std::vector<RampSample> series;  // includes t = 0 and the exact t = tau sample
    SpinObservables final_obs;       // at t = tau + hold
};

// Integrate a state through the ramp plus hold window. dt is an upper bound
// on the step (adjusted so samples land exactly on multiples of stride and on
// tau); it must satisfy dt * max_k A_k <= 0.1. Physicality of the Gaussian
// state (|F_k|^2 <= G_k (G_k + 1)) is monitored at every sample.
RampResult evolve(ModePairState state, const ModelSpec& base, const RampSchedule& ramp,
                  double dt, double stride, bool literal_k0 = false);

// Same machinery at constant field for t_total.
RampResult evolve_constant(ModePairState state, const ModelSpec& model, double t_total,
                           double dt, double stride);

}  // namespace xxz
