#pragma once

#include <array>
#include <vector>

namespace xxz {

inline constexpr int kMaxDim = 3;

// Hypercubic lattice with periodic boundaries. Extents are per axis so that
// rectangular clusters (e.g. 3x4) are supported next to the cubic L^d case.
struct LatticeSpec {
    int dim = 0;
    std::array<int, kMaxDim> extent{};

    int n_sites() const {
        int n = 1;
        for (int a = 0; a < dim; ++a) n *= extent[a];
        return n;
    }
    int coordination() const { return 2 * dim; }  // z = 2d
    bool is_cubic() const {
        for (int a = 1; a < dim; ++a)
            if (extent[a] != extent[0]) return false;
        return true;
    }
};

// One point of the discrete Brillouin zone, k_a = 2*pi*n_a / L_a.
struct Momentum {
    int dim = 0;
    std::array<int, kMaxDim> n{};
    std::array<double, kMaxDim> k{};
};

// Per site, the ordered list of its z nearest neighbors under periodic
// wrapping. For extent 2 the +a and -a neighbors coincide, so entries repeat.
using NeighborTable = std::vector<std::vector<int>>;

struct Lattice {
    LatticeSpec spec;
    NeighborTable neighbors;
    std::vector<Momentum> momenta;  // row-major over n; momenta[0] is k = 0
    std::vector<int> negated;       // index of -k (mod 2*pi) per momentum

    int site_index(const std::array<int, kMaxDim>& coord) const;
    std::array<int, kMaxDim> site_coord(int index) const;
};

Lattice build_lattice(int dim, int length);
Lattice build_lattice(int dim, const std::array<int, kMaxDim>& extent);

// Interaction structure factor gamma_k = J * sum_a cos(k_a), so that
// gamma_0 = d*J = z*J/2. This normalization (half the raw coupling-matrix
// Fourier sum) is the one that reproduces the k = 0 gap sqrt(z*Omega*J)
// checked against exact diagonalization.
double gamma_k(const LatticeSpec& spec, double coupling, const Momentum& k);

}  // namespace xxz
