#pragma once

#include "xxzlab/errors.hpp"
#include "xxzlab/lattice.hpp"

namespace xxz {

// XXZ model with in-plane ferromagnetic coupling J > 0, anisotropy
// delta in (-1, 1] on the z coupling, and a uniform field omega >= 0 along x.
// All energies downstream are naturally quoted in units of J.
struct ModelSpec {
    LatticeSpec lattice;
    double coupling = 1.0;
    double delta = 1.0;
    double omega = 0.0;

    void validate() const {
        if (lattice.dim < 1 || lattice.dim > kMaxDim)
            throw config_error("lattice dimension must be 1, 2 or 3");
        for (int a = 0; a < lattice.dim; ++a)
            if (lattice.extent[a] < 2) throw config_error("lattice extent must be >= 2");
        if (!(coupling > 0.0)) throw config_error("coupling J must be > 0");
        if (!(delta > -1.0) || !(delta <= 1.0))
            throw config_error("anisotropy delta must lie in (-1, 1]");
        if (!(omega >= 0.0)) throw config_error("field omega must be >= 0");
    }

    ModelSpec with_omega(double w) const {
        ModelSpec m = *this;
        m.omega = w;
        return m;
    }
};

}  // namespace xxz
