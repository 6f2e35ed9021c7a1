#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "xxzlab/errors.hpp"

namespace xxz::thermo {

// Energy-per-spin samples e(T_k) on a strictly increasing temperature grid,
// plus the metadata needed to join reconstructed entropies with squeezing
// tables. Temperatures and energies are in units of J (and J per spin).
struct EnergyTable {
    std::vector<double> temperature;
    std::vector<double> energy;

    // optional metadata (NaN / 0 when absent)
    int dim = 0;
    std::array<int, 3> extent{};
    double delta = std::numeric_limits<double>::quiet_NaN();
    double omega = std::numeric_limits<double>::quiet_NaN();

    std::vector<std::string> validate() const;  // throws config_error; returns warnings
};

struct Midpoint {
    double t = 0.0;  // T_{k+1/2}
    double c = 0.0;  // finite-difference specific heat
};

// c(T_{k+1/2}) = [e(T_{k+1}) - e(T_k)] / [T_{k+1} - T_k], one per adjacent pair.
std::vector<Midpoint> specific_heat_midpoints(const EnergyTable& table);

// Entropy increments Delta s_k = s(T_{k+1}) - s(T_k) from piecewise-linear
// c(T) between midpoints integrated against dT/T (log plus linear terms,
// exact for constant and linear c). The first and last intervals extend c by
// constant continuation from the nearest midpoint. Requires >= 3 midpoints.
std::vector<double> entropy_increments(const EnergyTable& table);

enum class AnchorRule {
    zero_at_tmin,
    value_at_tmax,
    ln2_at_infinity,  // accepted with a warning; anchors ln 2 at T_max
};

AnchorRule parse_anchor_rule(const std::string& name);
std::string anchor_rule_name(AnchorRule rule);

struct EntropyCurve {
    std::vector<double> temperature;  // the table's T_k
    std::vector<double> entropy;      // s(T_k)
    std::vector<double> increments;   // Delta s_k, size n-1
    std::vector<Midpoint> midpoints;

    AnchorRule anchor = AnchorRule::zero_at_tmin;
    double anchor_temperature = 0.0;
    double anchor_value = 0.0;
    std::vector<std::string> warnings;

    // metadata carried over from the table
    int dim = 0;
    std::array<int, 3> extent{};
    double delta = std::numeric_limits<double>::quiet_NaN();
    double omega = std::numeric_limits<double>::quiet_NaN();

    // c(T) evaluated from the scheme's own piecewise-linear midpoint
    // interpolant (constant beyond the outermost midpoints).
    double specific_heat_at(double t) const;
    // monotone (piecewise-linear) interpolation of s(T); throws outside range.
    double entropy_at(double t) const;
};

// anchor_value is used by value_at_tmax; a finite gap_hint triggers the
// low-T anchoring warning when the gap is not >> T_min.
EntropyCurve entropy_curve(const EnergyTable& table, AnchorRule rule, double anchor_value = 0.0,
                           double gap_hint = std::numeric_limits<double>::quiet_NaN());

struct SqueezingRow {
    double omega = 0.0;
    double temperature = 0.0;
    double xi2 = 0.0;
};

struct MapRow {
    double omega = 0.0;
    double temperature = 0.0;
    double entropy = 0.0;
    double xi2 = 0.0;
};

// Attaches s(T) to each (omega, T, xi2) row by interpolating the entropy
// curve with matching omega. Metadata (d, extent, delta) must agree; rows
// whose omega has no curve or whose T falls outside the curve's range are
// collected into the error list, and config_error is thrown if any exist.
std::vector<MapRow> join_squeezing_entropy(std::span<const SqueezingRow> squeezing,
                                           std::span<const EntropyCurve> curves,
                                           int dim, const std::array<int, 3>& extent,
                                           double delta);

}  // namespace xxz::thermo
