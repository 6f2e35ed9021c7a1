#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "xxzlab/lsw_dynamics.hpp"
#include "xxzlab/model.hpp"
#include "xxzlab/observables.hpp"

namespace xxz::ed {

// Size tiers (desk-scale memory/time budgets).
inline constexpr int kMaxSpinsIterative = 24;  // two lowest eigenpairs
inline constexpr int kMaxSpinsDense = 12;      // full spectrum / thermal
inline constexpr int kMaxSpinsDynamics = 16;   // real-time ramps

// Knobs for the canonical-transformation checks (J -> -J with a staggered
// field is unitarily equivalent to the uniform ferromagnetic model on
// bipartite lattices). Production paths use the defaults.
struct HamiltonianTerms {
    double coupling_scale = 1.0;
    bool staggered_field = false;
};

// Matrix-free XXZ Hamiltonian in the computational z basis. Basis state b
// has site i up when bit i of b is set; site indexing is the lattice module's
// row-major order, so basis states are reproducible bit for bit.
//   H = sum_bonds [ -J (SxSx + SySy) + J delta SzSz ] - omega sum_i eps_i Sx_i
// with one bond per unordered nearest-neighbor pair.
class Hamiltonian {
  public:
    explicit Hamiltonian(const ModelSpec& model, const HamiltonianTerms& terms = {});

    int n_spins() const { return n_spins_; }
    std::size_t dimension() const { return diag_.size(); }
    double omega() const { return omega_; }
    const ModelSpec& model() const { return model_; }

    // y = H x at the model's own field.
    void apply(const double* x, double* y) const;
    void apply(const std::complex<double>* x, std::complex<double>* y) const;
    // y = H(omega) x with the field term rescaled (ramps).
    void apply_at_field(const std::complex<double>* x, std::complex<double>* y,
                        double omega) const;

    std::vector<std::vector<double>> dense() const;  // N <= kMaxSpinsDense

  private:
    template <class Scalar>
    void apply_impl(const Scalar* x, Scalar* y, double omega) const;

    ModelSpec model_;
    int n_spins_ = 0;
    double coupling_ = 0.0;
    double omega_ = 0.0;
    std::vector<std::uint32_t> bond_masks_;  // two set bits per bond
    std::vector<double> diag_;               // J delta sum_bonds sz_i sz_j
    std::vector<double> field_sign_;         // eps_i per site
};

struct GroundResult {
    double e0 = 0.0;
    double e1 = 0.0;
    std::vector<double> ground;
    int iterations = 0;
    double residual = 0.0;
    bool degenerate = false;  // |e1 - e0| below resolution
};

// Two lowest eigenpairs. Dense LAPACK route for small dimensions, Lanczos
// with full reorthogonalization above that; residual norms <= 1e-8 scale.
GroundResult ground_and_gap(const ModelSpec& model);
GroundResult lanczos_ground_and_gap(const Hamiltonian& ham);

// Full spectrum, N <= kMaxSpinsDense.
std::vector<double> dense_spectrum(const ModelSpec& model, const HamiltonianTerms& terms = {});

// Collective-spin observables of a normalized pure state. xi2 is computed
// with the angle-minimized transverse variance
//   min_perp Var = (Vy + Vz)/2 - sqrt(((Vy - Vz)/2)^2 + Cov^2)
// and the full |<J>|^2 in the denominator; fq is the pure-state 4 Var(J^y)/N.
SpinObservables state_observables(std::span<const double> psi, const ModelSpec& model);
SpinObservables state_observables(std::span<const std::complex<double>> psi,
                                  const ModelSpec& model);

// Var(J^axis) of a pure state, axis in {'x', 'y', 'z'}.
double collective_variance(std::span<const double> psi, const ModelSpec& model, char axis);

// Thermal equilibrium from the dense spectrum (N <= kMaxSpinsDense).
// Diagonalizes once; per-temperature evaluations reuse the eigenbasis. The
// J^y matrix elements needed for the mixed-state QFI
//   f_Q = (2/N) sum_nm (p_n - p_m)^2 / (p_n + p_m) |<m|J^y|n>|^2
// are built lazily on the first observables request.
class ThermalSolver {
  public:
    explicit ThermalSolver(const ModelSpec& model);
    ~ThermalSolver();

    struct Result {
        SpinObservables obs;
        double energy_per_spin = 0.0;
        double entropy_per_spin = 0.0;
    };

    Result at_temperature(double temperature) const;
    // energy/entropy only; skips the QFI matrix elements.
    void energy_entropy(double temperature, double& e, double& s) const;
    const std::vector<double>& eigenvalues() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

ThermalSolver::Result thermal_observables(const ModelSpec& model, double temperature);

// Real-time Schrodinger evolution through a field ramp, starting from the
// ground state at omega_i. Fourth-order Runge-Kutta with a per-step
// mean-energy shift (a time-dependent global phase) so that step error is
// set by the energy spread, not by |E_0|. Norm drift beyond 1e-8 is reported
// as a step-size failure. N <= kMaxSpinsDynamics.
struct RampSeries {
    std::vector<RampSample> series;
    std::vector<std::complex<double>> final_state;
    double max_norm_drift = 0.0;
};

RampSeries evolve_ramp(const ModelSpec& base, const RampSchedule& ramp, double dt,
                       double stride);

}  // namespace xxz::ed
