#include "xxzlab/lsw_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "xxzlab/errors.hpp"

namespace xxz {

void RampSchedule::validate() const {
    if (!(omega_i > omega_f) || !(omega_f > 0.0))
        throw config_error("ramp requires omega_i > omega_f > 0");
    if (!(tau > 0.0)) throw config_error("ramp duration tau must be > 0");
    if (hold < 0.0) throw config_error("ramp hold time must be >= 0");
}

double ramp_shape(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    if (x < 0.5) return 0.5 * std::exp(2.0 - 1.0 / x);
    if (x > 0.5) return 1.0 - 0.5 * std::exp(2.0 - 1.0 / (1.0 - x));
    return 0.5;
}

double schedule_value(const RampSchedule& ramp, double t) {
    if (t >= ramp.tau) return ramp.omega_f;
    return ramp.omega_i + ramp_shape(t / ramp.tau) * (ramp.omega_f - ramp.omega_i);
}

ModeSystem make_mode_system(const ModelSpec& base, bool literal_k0) {
    base.validate();
    const Lattice lat = build_lattice(base.lattice.dim, base.lattice.extent);
    const double g0 = base.coupling * base.lattice.dim;

    ModeSystem sys;
    sys.n_sites = static_cast<double>(base.lattice.n_sites());
    sys.negated = lat.negated;
    sys.literal_k0 = literal_k0;
    sys.a0.reserve(lat.momenta.size());
    sys.b.reserve(lat.momenta.size());
    for (const Momentum& k : lat.momenta) {
        const double gk = gamma_k(base.lattice, base.coupling, k);
        sys.a0.push_back(g0 + 0.5 * (base.delta - 1.0) * gk);
        sys.b.push_back(-0.5 * (base.delta + 1.0) * gk);
    }
    return sys;
}

ModePairState ground_state_pairs(const ModelSpec& model) {
    const auto modes = build_modes(model);
    ModePairState s;
    s.g.reserve(modes.size());
    s.f.reserve(modes.size());
    for (const auto& m : modes) {
        s.g.push_back(m.v_k * m.v_k);
        s.f.push_back(-m.u_k * m.v_k);
    }
    return s;
}

void mode_derivatives(const ModeSystem& sys, double omega, const ModePairState& s,
                      std::vector<double>& dg, std::vector<std::complex<double>>& df) {
    const std::size_t n = sys.a0.size();
    dg.resize(n);
    df.resize(n);
    constexpr std::complex<double> mi(0.0, -1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double pf = (sys.literal_k0 && i == 0) ? 2.0 : 1.0;
        const double a = sys.a0[i] + omega;
        dg[i] = -2.0 * pf * sys.b[i] * s.f[i].imag();
        df[i] = mi * pf *
                (2.0 * a * s.f[i] + sys.b[i] * (1.0 + s.g[i] + s.g[sys.negated[i]]));
    }
}

namespace {

struct Deriv {
    std::vector<double> dg;
    std::vector<std::complex<double>> df;
};

void axpy(ModePairState& out, const ModePairState& base, const Deriv& d, double h) {
    const std::size_t n = base.g.size();
    out.g.resize(n);
    out.f.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.g[i] = base.g[i] + h * d.dg[i];
        out.f[i] = base.f[i] + h * d.df[i];
    }
}

}  // namespace

void integrate_step(ModePairState& state, const ModeSystem& sys,
                    const std::function<double(double)>& omega_at, double t, double dt) {
    static thread_local Deriv k1, k2, k3, k4;
    static thread_local ModePairState tmp;

    mode_derivatives(sys, omega_at(t), state, k1.dg, k1.df);
    axpy(tmp, state, k1, 0.5 * dt);
    mode_derivatives(sys, omega_at(t + 0.5 * dt), tmp, k2.dg, k2.df);
    axpy(tmp, state, k2, 0.5 * dt);
    mode_derivatives(sys, omega_at(t + 0.5 * dt), tmp, k3.dg, k3.df);
    axpy(tmp, state, k3, dt);
    mode_derivatives(sys, omega_at(t + dt), tmp, k4.dg, k4.df);

    const double h = dt / 6.0;
    for (std::size_t i = 0; i < state.g.size(); ++i) {
        state.g[i] += h * (k1.dg[i] + 2.0 * k2.dg[i] + 2.0 * k3.dg[i] + k4.dg[i]);
        state.f[i] += h * (k1.df[i] + 2.0 * k2.df[i] + 2.0 * k3.df[i] + k4.df[i]);
    }
}

SpinObservables pair_state_observables(const ModePairState& state, const ModeSystem& sys) {
    const double n = sys.n_sites;
    double occ = 0.0;
    for (double g : state.g) occ += g;

    SpinObservables obs;
    obs.jx = 0.5 * n - occ;
    obs.var_jz = 0.25 * n * (1.0 + 2.0 * state.g[0] - 2.0 * state.f[0].real());
    obs.var_jy = 0.25 * n * (1.0 + 2.0 * state.g[0] + 2.0 * state.f[0].real());
    obs.cov_yz = 0.0;
    obs.xi2 = n * obs.var_jz / (obs.jx * obs.jx);
    obs.fq = 4.0 * obs.var_jy / n;
    return obs;
}

namespace {

void check_physicality(const ModePairState& s) {
    for (std::size_t i = 0; i < s.g.size(); ++i) {
        const double bound = s.g[i] * (s.g[i] + 1.0);
        const double excess = std::norm(s.f[i]) - bound;
        if (excess > 1e-6 * std::max(1.0, bound))
            throw numerical_error(
                "Gaussian-state physicality violated (|F_k|^2 > G_k(G_k+1) by " +
                std::to_string(excess) + " at mode " + std::to_string(i) +
                "); reduce dt");
    }
}

RampResult run(ModePairState state, const ModeSystem& sys,
               const std::function<double(double)>& omega_at, double t_end, double dt,
               double stride) {
    if (!(dt > 0.0)) throw config_error("dt must be > 0");
    double a_max = 0.0;
    const double w0 = std::max(omega_at(0.0), omega_at(t_end));
    for (double a : sys.a0) a_max = std::max(a_max, a + w0);
    if (dt * a_max > 0.1)
        throw config_error("dt too large: dt * max_k A_k must be <= 0.1 (got " +
                           std::to_string(dt * a_max) + ")");

    if (!(stride > 0.0)) stride = t_end / 512.0;
    stride = std::min(stride, t_end);
    // land samples exactly on multiples of stride (and hence on t_mark, which
    // callers choose as a multiple)
    const int per = std::max(1, static_cast<int>(std::ceil(stride / dt)));
    const double h = stride / per;
    const long n_samples = std::lround(t_end / stride);

    RampResult out;
    out.series.reserve(n_samples + 1);
    out.series.push_back({0.0, omega_at(0.0), pair_state_observables(state, sys)});

    double t = 0.0;
    for (long s = 0; s < n_samples; ++s) {
        for (int i = 0; i < per; ++i) {
            integrate_step(state, sys, omega_at, t, h);
            t += h;
        }
        t = (s + 1) * stride;  // keep the clock exact
        check_physicality(state);
        out.series.push_back({t, omega_at(t), pair_state_observables(state, sys)});
    }
    out.final_obs = out.series.back().obs;
    return out;
}

}  // namespace

RampResult evolve(ModePairState state, const ModelSpec& base, const RampSchedule& ramp,
                  double dt, double stride, bool literal_k0) {
    ramp.validate();
    const ModeSystem sys = make_mode_system(base, literal_k0);
    if (state.g.size() != sys.a0.size())
        throw config_error("state size does not match the model's momentum grid");

    const double t_end = ramp.tau + ramp.hold;
    if (!(stride > 0.0)) stride = t_end / 512.0;
    // force the sample grid to contain t = tau so ramp-end observables are exact
    const long per_tau = std::max(1L, std::lround(ramp.tau / stride));
    stride = ramp.tau / per_tau;
    const double n_total = std::ceil(t_end / stride - 1e-9);
    const double t_final = stride * n_total;

    auto omega_at = [&ramp](double t) { return schedule_value(ramp, t); };
    return run(std::move(state), sys, omega_at, t_final, dt, stride);
}

RampResult evolve_constant(ModePairState state, const ModelSpec& model, double t_total,
                           double dt, double stride) {
    if (!(t_total > 0.0)) throw config_error("t_total must be > 0");
    const ModeSystem sys = make_mode_system(model, false);
    if (state.g.size() != sys.a0.size())
        throw config_error("state size does not match the model's momentum grid");
    const double w = model.omega;
    auto omega_at = [w](double) { return w; };
    if (!(stride > 0.0)) stride = t_total / 64.0;
    const long per = std::max(1L, std::lround(t_total / stride));
    stride = t_total / per;
    return run(std::move(state), sys, omega_at, t_total, dt, stride);
}

}  // namespace xxz
