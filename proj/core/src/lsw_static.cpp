#include "xxzlab/lsw_static.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "xxzlab/errors.hpp"

namespace xxz {

std::vector<BogoliubovMode> build_modes(const ModelSpec& model) {
    const Lattice lat = build_lattice(model.lattice.dim, model.lattice.extent);
    return build_modes(model, lat);
}

std::vector<BogoliubovMode> build_modes(const ModelSpec& model, const Lattice& lattice) {
    model.validate();
    const double g0 = model.coupling * model.lattice.dim;  // gamma_0 = d*J

    std::vector<BogoliubovMode> modes;
    modes.reserve(lattice.momenta.size());
    for (const Momentum& k : lattice.momenta) {
        const double gk = gamma_k(model.lattice, model.coupling, k);
        BogoliubovMode m;
        m.k = k;
        m.a_k = g0 + 0.5 * (model.delta - 1.0) * gk + model.omega;
        m.b_k = -0.5 * (model.delta + 1.0) * gk;
        const double eps2 = m.a_k * m.a_k - m.b_k * m.b_k;
        if (!(m.a_k > 0.0) || eps2 <= 1e-12 * (m.a_k * m.a_k + m.b_k * m.b_k)) {
            throw numerical_error("gapless mode: eps_k <= 0 at k index " +
                                  std::to_string(&k - lattice.momenta.data()) +
                                  " (omega = " + std::to_string(model.omega) + ")");
        }
        m.eps_k = std::sqrt(eps2);
        // v^2 = (A - eps) / (2 eps) written cancellation-free
        const double v2 = m.b_k * m.b_k / (2.0 * m.eps_k * (m.a_k + m.eps_k));
        m.u_k = std::sqrt(1.0 + v2);
        m.v_k = (m.b_k < 0.0 ? -1.0 : 1.0) * std::sqrt(v2);
        modes.push_back(m);
    }
    return modes;
}

SpinObservables lsw_observables(const std::vector<BogoliubovMode>& modes,
                                const ModelSpec& model) {
    const double n = static_cast<double>(model.lattice.n_sites());

    double depletion = 0.0;
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& m : modes) {
        depletion += m.v_k * m.v_k;
        gap = std::min(gap, m.eps_k);
    }

    const auto& k0 = modes.front();  // momenta[0] is k = 0

    SpinObservables obs;
    obs.jx = 0.5 * n - depletion;
    if (obs.jx <= 0.0)
        throw numerical_error("magnetization collapse: <J^x> <= 0, spin-wave theory invalid");
    obs.var_jz = 0.25 * n * (k0.a_k + k0.b_k) / k0.eps_k;
    obs.var_jy = 0.25 * n * (k0.a_k - k0.b_k) / k0.eps_k;
    obs.cov_yz = 0.0;
    obs.xi2 = n * obs.var_jz / (obs.jx * obs.jx);
    obs.fq = 4.0 * obs.var_jy / n;
    obs.gap = gap;
    return obs;
}

double lsw_gap(const ModelSpec& model) {
    const auto modes = build_modes(model);
    double gap = std::numeric_limits<double>::infinity();
    for (const auto& m : modes) gap = std::min(gap, m.eps_k);
    return gap;
}

double adiabatic_time_estimate(const ModelSpec& model, double omega_f) {
    if (!(omega_f > 0.0)) throw config_error("adiabatic_time_estimate requires omega_f > 0");
    // minimize the gap over omega in [omega_f, inf); the gap grows with the
    // field, so a log scan up to a field that dominates every other scale
    // suffices.
    const double omega_hi = std::max(100.0 * model.coupling, 100.0 * omega_f);
    const int n_scan = 64;
    double min_gap = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n_scan; ++i) {
        const double w =
            omega_f * std::pow(omega_hi / omega_f, static_cast<double>(i) / (n_scan - 1));
        min_gap = std::min(min_gap, lsw_gap(model.with_omega(w)));
    }
    return 1.0 / (min_gap * min_gap);
}

std::vector<SweepRow> sweep(const ModelSpec& base, std::span<const double> omegas,
                            std::span<const int> lengths) {
    std::vector<int> ls(lengths.begin(), lengths.end());
    if (ls.empty()) ls.push_back(base.lattice.extent[0]);

    std::vector<SweepRow> rows;
    rows.reserve(ls.size() * omegas.size());
    for (int length : ls) {
        ModelSpec m = base;
        for (int a = 0; a < m.lattice.dim; ++a) m.lattice.extent[a] = length;
        // one lattice (and one gamma_k evaluation per momentum) per length
        Lattice lat;
        std::string lattice_error;
        try {
            lat = build_lattice(m.lattice.dim, m.lattice.extent);
        } catch (const std::exception& e) {
            lattice_error = e.what();
        }
        for (double w : omegas) {
            SweepRow row;
            row.model = m.with_omega(w);
            if (!lattice_error.empty()) {
                row.error = lattice_error;
            } else {
                try {
                    const auto modes = build_modes(row.model, lat);
                    row.obs = lsw_observables(modes, row.model);
                } catch (const std::exception& e) {
                    row.error = e.what();
                }
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y, double xlo,
                          double xhi) {
    if (x.size() != y.size()) throw config_error("fit_power_law: size mismatch");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < xlo || x[i] > xhi) continue;
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw config_error("fit_power_law: non-positive value inside the fit window");
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    const int n = static_cast<int>(lx.size());
    if (n < 3) throw config_error("fit_power_law: need at least 3 points in the window");

    double sx = 0.0, sy = 0.0;
    for (int i = 0; i < n; ++i) {
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw config_error("fit_power_law: degenerate abscissa");

    PowerLawFit fit;
    fit.n_points = n;
    fit.exponent = sxy / sxx;
    fit.log_prefactor = my - fit.exponent * mx;
    double ss_res = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.log_prefactor + fit.exponent * lx[i]);
        ss_res += r * r;
    }
    fit.exponent_stderr = n > 2 ? std::sqrt(ss_res / (n - 2) / sxx) : 0.0;
    return fit;
}

}  // namespace xxz
