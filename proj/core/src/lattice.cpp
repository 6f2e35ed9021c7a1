#include "xxzlab/lattice.hpp"

#include <cmath>
#include <numbers>

#include "xxzlab/errors.hpp"

namespace xxz {

namespace {

// Row-major linearization: index = ((c_0 * L_1) + c_1) * L_2 + c_2 ...
// Fixed and documented so that ED basis states are reproducible bit for bit.
int linear_index(const LatticeSpec& spec, const std::array<int, kMaxDim>& coord) {
    int idx = 0;
    for (int a = 0; a < spec.dim; ++a) idx = idx * spec.extent[a] + coord[a];
    return idx;
}

std::array<int, kMaxDim> coord_of(const LatticeSpec& spec, int index) {
    std::array<int, kMaxDim> c{};
    for (int a = spec.dim - 1; a >= 0; --a) {
        c[a] = index % spec.extent[a];
        index /= spec.extent[a];
    }
    return c;
}

}  // namespace

int Lattice::site_index(const std::array<int, kMaxDim>& coord) const {
    return linear_index(spec, coord);
}

std::array<int, kMaxDim> Lattice::site_coord(int index) const { return coord_of(spec, index); }

Lattice build_lattice(int dim, int length) {
    std::array<int, kMaxDim> extent{};
    for (int a = 0; a < dim && a < kMaxDim; ++a) extent[a] = length;
    return build_lattice(dim, extent);
}

Lattice build_lattice(int dim, const std::array<int, kMaxDim>& extent) {
    if (dim < 1 || dim > kMaxDim) throw config_error("lattice dimension must be 1, 2 or 3");
    for (int a = 0; a < dim; ++a)
        if (extent[a] < 2) throw config_error("lattice extent must be >= 2 along every axis");

    Lattice lat;
    lat.spec.dim = dim;
    lat.spec.extent = extent;
    const int n = lat.spec.n_sites();

    lat.neighbors.assign(n, {});
    for (int i = 0; i < n; ++i) {
        auto c = coord_of(lat.spec, i);
        auto& nb = lat.neighbors[i];
        nb.reserve(2 * dim);
        for (int a = 0; a < dim; ++a) {
            for (int step : {+1, -1}) {
                auto cc = c;
                cc[a] = (cc[a] + step + extent[a]) % extent[a];
                nb.push_back(linear_index(lat.spec, cc));
            }
        }
    }

    lat.momenta.resize(n);
    lat.negated.resize(n);
    for (int i = 0; i < n; ++i) {
        Momentum m;
        m.dim = dim;
        m.n = coord_of(lat.spec, i);
        std::array<int, kMaxDim> neg{};
        for (int a = 0; a < dim; ++a) {
            m.k[a] = 2.0 * std::numbers::pi * m.n[a] / extent[a];
            neg[a] = (extent[a] - m.n[a]) % extent[a];
        }
        lat.momenta[i] = m;
        lat.negated[i] = linear_index(lat.spec, neg);
    }
    return lat;
}

double gamma_k(const LatticeSpec& spec, double coupling, const Momentum& k) {
    double g = 0.0;
    for (int a = 0; a < spec.dim; ++a) {
        // cos is even, so fold n -> min(n, L - n); this makes gamma_k and
        // gamma_{-k} bit-identical.
        const int n = k.n[a];
        const int folded = std::min(n, spec.extent[a] - n);
        g += std::cos(2.0 * std::numbers::pi * folded / spec.extent[a]);
    }
    return coupling * g;
}

}  // namespace xxz
