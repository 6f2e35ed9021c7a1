#pragma once

#include <limits>

namespace xxz {

// Collective-spin observables shared by the spin-wave and ED paths.
// jx, var_jy, var_jz, cov_yz are extensive (whole-lattice) values; the CSV
// layer divides by N where the column name says so.
struct SpinObservables {
    double jx = 0.0;      // <J^x>
    double var_jz = 0.0;  // Var(J^z)
    double var_jy = 0.0;  // Var(J^y)
    double cov_yz = 0.0;  // Cov(J^y, J^z); identically 0 in LSW
    double xi2 = 0.0;     // Wineland squeezing parameter xi_R^2
    double fq = 0.0;      // QFI density f_Q(J^y)
    double gap = std::numeric_limits<double>::quiet_NaN();  // E_1 - E_0 when known
};

}  // namespace xxz
