#include "xxzlab/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace xxz::thermo {

std::vector<std::string> EnergyTable::validate() const {
    if (temperature.size() != energy.size())
        throw config_error("energy table: temperature/energy size mismatch");
    if (temperature.size() < 4)
        throw config_error("energy table needs at least 4 samples");
    for (std::size_t k = 0; k < temperature.size(); ++k) {
        if (!(temperature[k] > 0.0)) throw config_error("temperatures must be > 0");
        if (k > 0 && !(temperature[k] > temperature[k - 1]))
            throw config_error("temperatures must be strictly increasing (duplicates rejected)");
    }
    std::vector<std::string> warnings;
    for (std::size_t k = 1; k < energy.size(); ++k) {
        if (energy[k] < energy[k - 1]) {
            warnings.push_back("energy decreases between T = " +
                               std::to_string(temperature[k - 1]) + " and " +
                               std::to_string(temperature[k]) +
                               " (unphysical input, negative specific heat)");
            break;
        }
    }
    return warnings;
}

std::vector<Midpoint> specific_heat_midpoints(const EnergyTable& table) {
    if (table.temperature.size() != table.energy.size() || table.temperature.size() < 2)
        throw config_error("energy table needs at least 2 samples for midpoints");
    for (std::size_t k = 1; k < table.temperature.size(); ++k)
        if (!(table.temperature[k] > table.temperature[k - 1]))
            throw config_error("temperatures must be strictly increasing (duplicates rejected)");

    std::vector<Midpoint> mid;
    mid.reserve(table.temperature.size() - 1);
    for (std::size_t k = 0; k + 1 < table.temperature.size(); ++k) {
        Midpoint m;
        m.t = 0.5 * (table.temperature[k] + table.temperature[k + 1]);
        m.c = (table.energy[k + 1] - table.energy[k]) /
              (table.temperature[k + 1] - table.temperature[k]);
        mid.push_back(m);
    }
    return mid;
}

namespace {

// integral of the linear segment c(T) = c0 + slope * (T - t0) against dT/T
// from ta to tb: the log plus linear closed form, exact for constant and
// linear c.
double segment_integral(double c0, double t0, double slope, double ta, double tb) {
    return (c0 - slope * t0) * std::log(tb / ta) + slope * (tb - ta);
}

}  // namespace

std::vector<double> entropy_increments(const EnergyTable& table) {
    table.validate();
    const auto mid = specific_heat_midpoints(table);
    const std::size_t m = mid.size();
    if (m < 3) throw config_error("entropy increments need at least 3 midpoints");

    // constant continuation of c beyond the outermost midpoints
    auto c_at = [&](long i) { return mid[std::clamp<long>(i, 0, m - 1)].c; };
    auto t_at = [&](long i) { return mid[std::clamp<long>(i, 0, m - 1)].t; };

    const auto& temps = table.temperature;
    std::vector<double> ds(temps.size() - 1);
    for (std::size_t k = 0; k + 1 < temps.size(); ++k) {
        // lower half [T_k, T_{k+1/2}] on segment (k-1/2, k+1/2)
        double slope_lo = 0.0;
        if (k >= 1) slope_lo = (c_at(k) - c_at(k - 1)) / (t_at(k) - t_at(k - 1));
        const double lo =
            segment_integral(c_at(k), t_at(k), slope_lo, temps[k], mid[k].t);

        // upper half [T_{k+1/2}, T_{k+1}] on segment (k+1/2, k+3/2)
        double slope_hi = 0.0;
        if (k + 1 < m) slope_hi = (c_at(k + 1) - c_at(k)) / (t_at(k + 1) - t_at(k));
        const double hi =
            segment_integral(mid[k].c, mid[k].t, slope_hi, mid[k].t, temps[k + 1]);

        ds[k] = lo + hi;
    }
    return ds;
}

AnchorRule parse_anchor_rule(const std::string& name) {
    if (name == "zero-at-tmin") return AnchorRule::zero_at_tmin;
    if (name == "value-at-tmax") return AnchorRule::value_at_tmax;
    if (name == "ln2-at-infinity") return AnchorRule::ln2_at_infinity;
    throw config_error("unknown anchor rule '" + name +
                       "' (expected zero-at-tmin, value-at-tmax or ln2-at-infinity)");
}

std::string anchor_rule_name(AnchorRule rule) {
    switch (rule) {
        case AnchorRule::zero_at_tmin: return "zero-at-tmin";
        case AnchorRule::value_at_tmax: return "value-at-tmax";
        case AnchorRule::ln2_at_infinity: return "ln2-at-infinity";
    }
    return "?";
}

double EntropyCurve::specific_heat_at(double t) const {
    const std::size_t m = midpoints.size();
    if (t <= midpoints.front().t) return midpoints.front().c;
    if (t >= midpoints.back().t) return midpoints.back().c;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (t <= midpoints[i + 1].t) {
            const double w = (t - midpoints[i].t) / (midpoints[i + 1].t - midpoints[i].t);
            return midpoints[i].c + w * (midpoints[i + 1].c - midpoints[i].c);
        }
    }
    return midpoints.back().c;
}

double EntropyCurve::entropy_at(double t) const {
    if (t < temperature.front() || t > temperature.back())
        throw config_error("entropy interpolation outside the curve's temperature range");
    const auto it = std::upper_bound(temperature.begin(), temperature.end(), t);
    std::size_t i = static_cast<std::size_t>(it - temperature.begin());
    if (i == 0) return entropy.front();
    if (i >= temperature.size()) return entropy.back();
    const double w = (t - temperature[i - 1]) / (temperature[i] - temperature[i - 1]);
    return entropy[i - 1] + w * (entropy[i] - entropy[i - 1]);
}

EntropyCurve entropy_curve(const EnergyTable& table, AnchorRule rule, double anchor_value,
                           double gap_hint) {
    EntropyCurve curve;
    curve.warnings = table.validate();
    curve.temperature = table.temperature;
    curve.midpoints = specific_heat_midpoints(table);
    curve.increments = entropy_increments(table);
    curve.anchor = rule;
    curve.dim = table.dim;
    curve.extent = table.extent;
    curve.delta = table.delta;
    curve.omega = table.omega;

    for (const auto& m : curve.midpoints) {
        if (m.c < 0.0) {
            curve.warnings.push_back("negative specific heat at T = " + std::to_string(m.t));
            break;
        }
    }

    const std::size_t n = table.temperature.size();
    curve.entropy.assign(n, 0.0);
    switch (rule) {
        case AnchorRule::zero_at_tmin:
            curve.anchor_temperature = table.temperature.front();
            curve.anchor_value = 0.0;
            if (std::isfinite(gap_hint) && !(gap_hint > 10.0 * table.temperature.front()))
                curve.warnings.push_back(
                    "zero-at-tmin anchor: the gap estimate is not >> T_min, the "
                    "anchored entropy may be offset");
            break;
        case AnchorRule::value_at_tmax:
            curve.anchor_temperature = table.temperature.back();
            curve.anchor_value = anchor_value;
            break;
        case AnchorRule::ln2_at_infinity:
            curve.anchor_temperature = table.temperature.back();
            curve.anchor_value = std::numbers::ln2;
            curve.warnings.push_back(
                "ln2-at-infinity is not integrable on a finite grid; anchoring "
                "s(T_max) = ln 2 instead, which overestimates s unless T_max is "
                "far above every scale");
            break;
    }

    if (rule == AnchorRule::zero_at_tmin) {
        curve.entropy[0] = 0.0;
        for (std::size_t k = 0; k + 1 < n; ++k)
            curve.entropy[k + 1] = curve.entropy[k] + curve.increments[k];
    } else {
        curve.entropy[n - 1] = curve.anchor_value;
        for (std::size_t k = n - 1; k-- > 0;)
            curve.entropy[k] = curve.entropy[k + 1] - curve.increments[k];
    }
    return curve;
}

std::vector<MapRow> join_squeezing_entropy(std::span<const SqueezingRow> squeezing,
                                           std::span<const EntropyCurve> curves,
                                           int dim, const std::array<int, 3>& extent,
                                           double delta) {
    for (const auto& c : curves) {
        if (c.dim != dim || c.extent != extent ||
            (std::isfinite(c.delta) && std::isfinite(delta) && c.delta != delta))
            throw config_error("entropy curve metadata (d, L, delta) does not match the "
                               "squeezing table; refusing to join");
    }

    auto find_curve = [&curves](double omega) -> const EntropyCurve* {
        for (const auto& c : curves) {
            const double scale = std::max(1.0, std::abs(omega));
            if (std::isfinite(c.omega) && std::abs(c.omega - omega) <= 1e-9 * scale) return &c;
        }
        return nullptr;
    };

    std::vector<MapRow> rows;
    std::vector<std::string> problems;
    for (const auto& sq : squeezing) {
        const EntropyCurve* c = find_curve(sq.omega);
        if (!c) {
            const std::string msg = "no entropy curve for omega = " + std::to_string(sq.omega);
            if (std::find(problems.begin(), problems.end(), msg) == problems.end())
                problems.push_back(msg);
            continue;
        }
        if (sq.temperature < c->temperature.front() || sq.temperature > c->temperature.back()) {
            const std::string msg = "omega = " + std::to_string(sq.omega) +
                                    ": squeezing grid T = " + std::to_string(sq.temperature) +
                                    " outside the entropy curve range [" +
                                    std::to_string(c->temperature.front()) + ", " +
                                    std::to_string(c->temperature.back()) + "]";
            problems.push_back(msg);
            continue;
        }
        rows.push_back({sq.omega, sq.temperature, c->entropy_at(sq.temperature), sq.xi2});
    }
    if (!problems.empty()) {
        std::string msg = "join failed:";
        for (const auto& p : problems) msg += "\n  " + p;
        throw config_error(msg);
    }
    return rows;
}

}  // namespace xxz::thermo
