#include "xxzlab/ed.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cblas.h>
#include <cmath>
#include <cstring>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "xxzlab/errors.hpp"

namespace xxz::ed {

namespace {

using cplx = std::complex<double>;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

Hamiltonian::Hamiltonian(const ModelSpec& model, const HamiltonianTerms& terms)
    : model_(model) {
    model.validate();
    n_spins_ = model.lattice.n_sites();
    if (n_spins_ > kMaxSpinsIterative)
        throw config_error("exact diagonalization limited to N <= " +
                           std::to_string(kMaxSpinsIterative) + " spins");
    coupling_ = terms.coupling_scale * model.coupling;
    omega_ = model.omega;

    const Lattice lat = build_lattice(model.lattice.dim, model.lattice.extent);

    // one bond per unordered nearest-neighbor pair (the coupling matrix
    // J_ij, not the multigraph; extent 2 keeps a single bond per axis pair)
    for (int i = 0; i < n_spins_; ++i) {
        for (int j : lat.neighbors[i]) {
            if (j > i) {
                const std::uint32_t mask = (1u << i) | (1u << j);
                if (std::find(bond_masks_.begin(), bond_masks_.end(), mask) ==
                    bond_masks_.end())
                    bond_masks_.push_back(mask);
            }
        }
    }
    std::sort(bond_masks_.begin(), bond_masks_.end());

    field_sign_.resize(n_spins_, 1.0);
    if (terms.staggered_field) {
        for (int i = 0; i < n_spins_; ++i) {
            const auto c = lat.site_coord(i);
            int parity = 0;
            for (int a = 0; a < lat.spec.dim; ++a) parity += c[a];
            field_sign_[i] = (parity % 2 == 0) ? 1.0 : -1.0;
        }
    }

    const std::size_t dim = std::size_t(1) << n_spins_;
    diag_.resize(dim);
    const double zz = 0.25 * coupling_ * model.delta;
    for (std::size_t b = 0; b < dim; ++b) {
        double d = 0.0;
        for (std::uint32_t m : bond_masks_) {
            const std::uint32_t bits = static_cast<std::uint32_t>(b) & m;
            d += (bits == 0 || bits == m) ? zz : -zz;  // sz_i sz_j = +-1/4
        }
        diag_[b] = d;
    }
}

template <class Scalar>
void Hamiltonian::apply_impl(const Scalar* x, Scalar* y, double omega) const {
    const std::size_t dim = diag_.size();
    const double hop = -0.5 * coupling_;
    for (std::size_t b = 0; b < dim; ++b) y[b] = diag_[b] * x[b];
    for (std::uint32_t m : bond_masks_) {
        for (std::size_t b = 0; b < dim; ++b) {
            const std::uint32_t bits = static_cast<std::uint32_t>(b) & m;
            if (bits != 0 && bits != m) y[b] += hop * x[b ^ m];
        }
    }
    for (int i = 0; i < n_spins_; ++i) {
        const double f = -0.5 * omega * field_sign_[i];
        const std::size_t bit = std::size_t(1) << i;
        for (std::size_t b = 0; b < dim; ++b) y[b] += f * x[b ^ bit];
    }
}

void Hamiltonian::apply(const double* x, double* y) const { apply_impl(x, y, omega_); }
void Hamiltonian::apply(const cplx* x, cplx* y) const { apply_impl(x, y, omega_); }
void Hamiltonian::apply_at_field(const cplx* x, cplx* y, double omega) const {
    apply_impl(x, y, omega);
}

std::vector<std::vector<double>> Hamiltonian::dense() const {
    if (n_spins_ > kMaxSpinsDense)
        throw config_error("dense Hamiltonian limited to N <= " +
                           std::to_string(kMaxSpinsDense));
    const std::size_t dim = diag_.size();
    std::vector<std::vector<double>> h(dim, std::vector<double>(dim, 0.0));
    std::vector<double> col(dim), out(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        std::fill(col.begin(), col.end(), 0.0);
        col[b] = 1.0;
        apply(col.data(), out.data());
        for (std::size_t a = 0; a < dim; ++a) h[a][b] = out[a];
    }
    return h;
}

namespace {

// Column-major dense eigensystem via LAPACK dsyevd.
void dense_eigensystem(const Hamiltonian& ham, std::vector<double>& evals,
                       std::vector<double>& evecs) {
    const std::size_t dim = ham.dimension();
    const lapack_int n = static_cast<lapack_int>(dim);
    evecs.assign(dim * dim, 0.0);
    std::vector<double> col(dim), out(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        std::fill(col.begin(), col.end(), 0.0);
        col[b] = 1.0;
        ham.apply(col.data(), out.data());
        std::memcpy(evecs.data() + b * dim, out.data(), dim * sizeof(double));
    }
    evals.assign(dim, 0.0);
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, evecs.data(), n, evals.data());
    if (info != 0)
        throw numerical_error("dsyevd failed with info = " + std::to_string(info));
}

void fix_phase(std::vector<double>& v) {
    std::size_t imax = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
    if (v[imax] < 0.0)
        for (double& x : v) x = -x;
}

std::vector<double> seeded_start(std::size_t dim) {
    std::mt19937 rng(0x5ee3d1ab);  // fixed seed: runs are reproducible
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(dim);
    for (double& x : v) x = u(rng);
    const double nv = norm(v);
    for (double& x : v) x /= nv;
    return v;
}

struct LanczosPair {
    double theta0 = 0.0, theta1 = 0.0;
    double res0 = 0.0, res1 = 0.0;
    std::vector<double> s0;  // tridiagonal eigenvector of theta0
    bool have1 = false;
};

LanczosPair ritz_pairs(const std::vector<double>& alpha, const std::vector<double>& beta) {
    const int m = static_cast<int>(alpha.size());
    std::vector<double> d = alpha;
    std::vector<double> e(beta.begin(), beta.end());  // beta[0..m-2]
    std::vector<double> z(static_cast<std::size_t>(m) * m);
    const lapack_int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'V', m, d.data(),
                                          e.empty() ? nullptr : e.data(), z.data(), m);
    if (info != 0)
        throw numerical_error("dstev failed with info = " + std::to_string(info));
    LanczosPair p;
    p.theta0 = d[0];
    p.s0.assign(z.begin(), z.begin() + m);
    p.res0 = std::abs(z[m - 1]);  // to be scaled by beta_m outside
    if (m > 1) {
        p.theta1 = d[1];
        p.res1 = std::abs(z[static_cast<std::size_t>(m) + m - 1]);
        p.have1 = true;
    }
    return p;
}

// Lanczos with full reorthogonalization restricted to the complement of
// `locked` (empty for the primary run). Returns the lowest Ritz pair.
struct LanczosLowest {
    double theta = 0.0;
    std::vector<double> vec;
    double residual = 0.0;
    int iterations = 0;
    double theta_second = std::numeric_limits<double>::quiet_NaN();
    double residual_second = std::numeric_limits<double>::infinity();
};

LanczosLowest lanczos_lowest(const Hamiltonian& ham,
                             const std::vector<const std::vector<double>*>& locked,
                             int max_iter) {
    const std::size_t dim = ham.dimension();
    std::vector<std::vector<double>> basis;
    std::vector<double> alpha, beta;

    auto orthogonalize = [&](std::vector<double>& w) {
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto* l : locked) {
                const double c = dot(*l, w);
                for (std::size_t i = 0; i < dim; ++i) w[i] -= c * (*l)[i];
            }
            for (const auto& v : basis) {
                const double c = dot(v, w);
                for (std::size_t i = 0; i < dim; ++i) w[i] -= c * v[i];
            }
        }
    };

    std::vector<double> v = seeded_start(dim);
    orthogonalize(v);
    const double nv = norm(v);
    if (nv < 1e-12) throw numerical_error("Lanczos start vector vanished after deflation");
    for (double& x : v) x /= nv;
    basis.push_back(std::move(v));

    std::vector<double> w(dim);
    double scale = 1.0;
    const int m_cap = static_cast<int>(
        std::min<long long>(max_iter, static_cast<long long>(dim) - locked.size()));
    if (m_cap < 1) throw numerical_error("Lanczos: empty Krylov space");

    LanczosLowest out;
    auto finish = [&](const LanczosPair& p, double b_last, bool exact) {
        out.theta = p.theta0;
        out.residual = exact ? 0.0 : b_last * p.res0;
        out.iterations = static_cast<int>(alpha.size());
        if (p.have1) {
            out.theta_second = p.theta1;
            out.residual_second = exact ? 0.0 : b_last * p.res1;
        }
        out.vec.assign(dim, 0.0);
        for (std::size_t q = 0; q < alpha.size(); ++q)
            for (std::size_t i = 0; i < dim; ++i) out.vec[i] += p.s0[q] * basis[q][i];
        const double nn = norm(out.vec);
        for (double& x : out.vec) x /= nn;
        return out;
    };

    for (int j = 0; j < m_cap; ++j) {
        ham.apply(basis[j].data(), w.data());
        const double a = dot(basis[j], w);
        alpha.push_back(a);
        scale = std::max(scale, std::abs(a));
        for (std::size_t i = 0; i < dim; ++i) w[i] -= a * basis[j][i];
        if (j > 0)
            for (std::size_t i = 0; i < dim; ++i) w[i] -= beta[j - 1] * basis[j - 1][i];
        orthogonalize(w);
        const double b = norm(w);

        const bool breakdown = b <= 1e-13 * scale;  // Krylov space exhausted
        const bool last = j + 1 == m_cap;
        if (breakdown || last || (j >= 8 && j % 4 == 0)) {
            const LanczosPair p = ritz_pairs(alpha, beta);
            const double tol = 1e-8 * std::max(1.0, scale);
            const bool done0 = breakdown || b * p.res0 <= tol;
            const bool done1 = breakdown || (p.have1 && b * p.res1 <= tol);
            if (breakdown || last || (done0 && done1)) return finish(p, b, breakdown);
        }
        beta.push_back(b);
        std::vector<double> next(dim);
        for (std::size_t i = 0; i < dim; ++i) next[i] = w[i] / b;
        basis.push_back(std::move(next));
    }
    throw numerical_error("Lanczos: unreachable");
}

}  // namespace

GroundResult lanczos_ground_and_gap(const Hamiltonian& ham) {
    const std::size_t dim = ham.dimension();
    const int max_iter = dim >= 32768 ? 300 : 400;

    LanczosLowest low = lanczos_lowest(ham, {}, max_iter);
    const double scale = std::max(1.0, std::abs(low.theta));
    const double tol = 1e-8 * scale;
    if (low.residual > tol)
        throw numerical_error("Lanczos did not converge the ground state: residual " +
                              std::to_string(low.residual) + " after " +
                              std::to_string(low.iterations) + " iterations");

    GroundResult res;
    res.e0 = low.theta;
    res.ground = std::move(low.vec);
    fix_phase(res.ground);
    res.iterations = low.iterations;
    res.residual = low.residual;

    if (std::isfinite(low.theta_second) && low.residual_second <= tol) {
        res.e1 = low.theta_second;
    } else {
        // deflate and converge the second eigenvalue on the complement
        LanczosLowest second = lanczos_lowest(ham, {&res.ground}, max_iter);
        if (second.residual > 1e-8 * std::max(1.0, std::abs(second.theta)))
            throw numerical_error(
                "Lanczos did not converge the first excited state: residual " +
                std::to_string(second.residual));
        res.e1 = second.theta;
        res.iterations += second.iterations;
        res.residual = std::max(res.residual, second.residual);
    }
    if (res.e1 < res.e0) std::swap(res.e0, res.e1);
    res.degenerate = std::abs(res.e1 - res.e0) <= 1e-10 * scale;
    return res;
}

GroundResult ground_and_gap(const ModelSpec& model) {
    const Hamiltonian ham(model);
    if (ham.dimension() <= 512) {
        std::vector<double> evals, evecs;
        dense_eigensystem(ham, evals, evecs);
        GroundResult res;
        res.e0 = evals[0];
        res.e1 = evals[1];
        res.ground.assign(evecs.begin(), evecs.begin() + ham.dimension());
        fix_phase(res.ground);
        res.iterations = 0;
        res.residual = 0.0;
        res.degenerate = std::abs(res.e1 - res.e0) <= 1e-10 * std::max(1.0, std::abs(res.e0));
        return res;
    }
    return lanczos_ground_and_gap(ham);
}

std::vector<double> dense_spectrum(const ModelSpec& model, const HamiltonianTerms& terms) {
    const Hamiltonian ham(model, terms);
    if (ham.n_spins() > kMaxSpinsDense)
        throw config_error("dense spectrum limited to N <= " + std::to_string(kMaxSpinsDense));
    const std::size_t dim = ham.dimension();
    std::vector<double> a(dim * dim, 0.0);
    std::vector<double> col(dim), out(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        std::fill(col.begin(), col.end(), 0.0);
        col[b] = 1.0;
        ham.apply(col.data(), out.data());
        std::memcpy(a.data() + b * dim, out.data(), dim * sizeof(double));
    }
    std::vector<double> w(dim);
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L',
                                           static_cast<lapack_int>(dim), a.data(),
                                           static_cast<lapack_int>(dim), w.data());
    if (info != 0) throw numerical_error("dsyevd failed with info = " + std::to_string(info));
    return w;
}

// ---------------------------------------------------------------------------
// collective-spin operators in the z basis

namespace {

// J^x: flips any site with amplitude 1/2
template <class Scalar>
void apply_jx(const Scalar* x, Scalar* y, int n_spins) {
    const std::size_t dim = std::size_t(1) << n_spins;
    std::fill(y, y + dim, Scalar(0));
    for (int i = 0; i < n_spins; ++i) {
        const std::size_t bit = std::size_t(1) << i;
        for (std::size_t b = 0; b < dim; ++b) y[b] += 0.5 * x[b ^ bit];
    }
}

// Jt = i J^y = sum_i (S+_i - S-_i)/2, real antisymmetric; the sign follows
// the bit being set in the target state.
template <class Scalar>
void apply_jtilde(const Scalar* x, Scalar* y, int n_spins) {
    const std::size_t dim = std::size_t(1) << n_spins;
    std::fill(y, y + dim, Scalar(0));
    for (int i = 0; i < n_spins; ++i) {
        const std::size_t bit = std::size_t(1) << i;
        for (std::size_t b = 0; b < dim; ++b) {
            const double s = (b & bit) ? 0.5 : -0.5;
            y[b] += s * x[b ^ bit];
        }
    }
}

double jz_of_basis(std::size_t b, int n_spins) {
    return 0.5 * (2.0 * __builtin_popcountll(b) - n_spins);
}

struct MeanVar {
    double jx, jy, jz, var_jx, var_jy, var_jz, cov_yz;
};

template <class Scalar>
MeanVar collective_moments(std::span<const Scalar> psi, int n_spins) {
    const std::size_t dim = std::size_t(1) << n_spins;
    if (psi.size() != dim) throw config_error("state dimension does not match the lattice");

    std::vector<Scalar> phix(dim), phit(dim);
    apply_jx(psi.data(), phix.data(), n_spins);
    apply_jtilde(psi.data(), phit.data(), n_spins);

    auto cdot = [dim](const Scalar* a, const Scalar* b) {
        cplx s(0.0, 0.0);
        for (std::size_t i = 0; i < dim; ++i) {
            if constexpr (std::is_same_v<Scalar, double>)
                s += cplx(a[i] * b[i], 0.0);
            else
                s += std::conj(a[i]) * b[i];
        }
        return s;
    };

    MeanVar mv{};
    mv.jx = cdot(psi.data(), phix.data()).real();
    mv.var_jx = cdot(phix.data(), phix.data()).real() - mv.jx * mv.jx;

    const cplx c = cdot(psi.data(), phit.data());
    mv.jy = c.imag();  // <J^y> = Im <psi|Jt|psi> since J^y = -i Jt
    mv.var_jy = cdot(phit.data(), phit.data()).real() - mv.jy * mv.jy;

    double jz = 0.0, jz2 = 0.0;
    std::vector<Scalar> phiz(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        const double z = jz_of_basis(b, n_spins);
        const double p = std::norm(psi[b]);
        jz += z * p;
        jz2 += z * z * p;
        phiz[b] = z * psi[b];
    }
    mv.jz = jz;
    mv.var_jz = jz2 - jz * jz;

    // (1/2)<{J^y, J^z}> = -Im <Jt psi | J^z psi>
    mv.cov_yz = -cdot(phit.data(), phiz.data()).imag() - mv.jy * mv.jz;
    return mv;
}

template <class Scalar>
SpinObservables observables_impl(std::span<const Scalar> psi, const ModelSpec& model) {
    const int n_spins = model.lattice.n_sites();
    const MeanVar mv = collective_moments(psi, n_spins);
    const double n = static_cast<double>(n_spins);

    SpinObservables obs;
    obs.jx = mv.jx;
    obs.var_jz = mv.var_jz;
    obs.var_jy = mv.var_jy;
    obs.cov_yz = mv.cov_yz;
    const double half_sum = 0.5 * (mv.var_jy + mv.var_jz);
    const double half_diff = 0.5 * (mv.var_jy - mv.var_jz);
    const double min_perp = half_sum - std::sqrt(half_diff * half_diff + mv.cov_yz * mv.cov_yz);
    const double j2 = mv.jx * mv.jx + mv.jy * mv.jy + mv.jz * mv.jz;
    if (j2 <= 0.0)
        throw numerical_error("xi_R^2 undefined: |<J>| = 0 (symmetric state, e.g. omega = 0)");
    obs.xi2 = n * min_perp / j2;
    obs.fq = 4.0 * mv.var_jy / n;  // pure state
    return obs;
}

}  // namespace

SpinObservables state_observables(std::span<const double> psi, const ModelSpec& model) {
    return observables_impl(psi, model);
}
SpinObservables state_observables(std::span<const cplx> psi, const ModelSpec& model) {
    return observables_impl(psi, model);
}

double collective_variance(std::span<const double> psi, const ModelSpec& model, char axis) {
    const MeanVar mv = collective_moments(psi, model.lattice.n_sites());
    switch (axis) {
        case 'x': return mv.var_jx;
        case 'y': return mv.var_jy;
        case 'z': return mv.var_jz;
        default: throw config_error("axis must be 'x', 'y' or 'z'");
    }
}

// ---------------------------------------------------------------------------
// thermal equilibrium from the dense spectrum

struct ThermalSolver::Impl {
    ModelSpec model;
    int n_spins = 0;
    std::size_t dim = 0;
    std::vector<double> evals;
    std::vector<double> evecs;  // column-major
    std::vector<double> jx_diag, jz_diag, jz2_diag, jy2_diag;
    mutable std::vector<double> jy_elems;  // |<m|J^y|n>| as Vt Jt V, lazy

    void build_jy_elements() const {
        if (!jy_elems.empty()) return;
        std::vector<double> jtv(dim * dim);
        std::vector<double> out(dim);
        for (std::size_t c = 0; c < dim; ++c) {
            apply_jtilde(evecs.data() + c * dim, out.data(), n_spins);
            std::memcpy(jtv.data() + c * dim, out.data(), dim * sizeof(double));
        }
        jy_elems.assign(dim * dim, 0.0);
        cblas_dgemm(CblasColMajor, CblasTrans, CblasNoTrans, static_cast<int>(dim),
                    static_cast<int>(dim), static_cast<int>(dim), 1.0, evecs.data(),
                    static_cast<int>(dim), jtv.data(), static_cast<int>(dim), 0.0,
                    jy_elems.data(), static_cast<int>(dim));
    }

    std::vector<double> weights(double temperature) const {
        std::vector<double> p(dim);
        const double e0 = evals[0];
        double z = 0.0;
        for (std::size_t n = 0; n < dim; ++n) {
            p[n] = std::exp(-(evals[n] - e0) / temperature);
            z += p[n];
        }
        for (double& w : p) w /= z;
        return p;
    }
};

ThermalSolver::ThermalSolver(const ModelSpec& model) : impl_(std::make_unique<Impl>()) {
    if (model.lattice.n_sites() > kMaxSpinsDense)
        throw config_error("thermal observables need the dense spectrum: N <= " +
                           std::to_string(kMaxSpinsDense));
    impl_->model = model;
    impl_->n_spins = model.lattice.n_sites();
    impl_->dim = std::size_t(1) << impl_->n_spins;

    const Hamiltonian ham(model);
    dense_eigensystem(ham, impl_->evals, impl_->evecs);

    const std::size_t dim = impl_->dim;
    impl_->jx_diag.resize(dim);
    impl_->jz_diag.resize(dim);
    impl_->jz2_diag.resize(dim);
    impl_->jy2_diag.resize(dim);
    std::vector<double> tmp(dim);
    for (std::size_t c = 0; c < dim; ++c) {
        const double* v = impl_->evecs.data() + c * dim;
        apply_jx(v, tmp.data(), impl_->n_spins);
        double jx = 0.0;
        for (std::size_t b = 0; b < dim; ++b) jx += v[b] * tmp[b];
        impl_->jx_diag[c] = jx;

        apply_jtilde(v, tmp.data(), impl_->n_spins);
        double jy2 = 0.0;
        for (std::size_t b = 0; b < dim; ++b) jy2 += tmp[b] * tmp[b];
        impl_->jy2_diag[c] = jy2;  // <n|(J^y)^2|n> = |Jt v_n|^2

        double jz = 0.0, jz2 = 0.0;
        for (std::size_t b = 0; b < dim; ++b) {
            const double z = jz_of_basis(b, impl_->n_spins);
            jz += z * v[b] * v[b];
            jz2 += z * z * v[b] * v[b];
        }
        impl_->jz_diag[c] = jz;
        impl_->jz2_diag[c] = jz2;
    }
}

ThermalSolver::~ThermalSolver() = default;

const std::vector<double>& ThermalSolver::eigenvalues() const { return impl_->evals; }

void ThermalSolver::energy_entropy(double temperature, double& e, double& s) const {
    if (!(temperature > 0.0)) throw config_error("temperature must be > 0");
    const auto& ev = impl_->evals;
    const double e0 = ev[0];
    double z = 0.0, esum = 0.0;
    for (double en : ev) {
        const double w = std::exp(-(en - e0) / temperature);
        z += w;
        esum += en * w;
    }
    const double n = static_cast<double>(impl_->n_spins);
    const double emean = esum / z;
    e = emean / n;
    s = (std::log(z) + (emean - e0) / temperature) / n;
}

ThermalSolver::Result ThermalSolver::at_temperature(double temperature) const {
    if (!(temperature > 0.0)) throw config_error("temperature must be > 0");
    const std::size_t dim = impl_->dim;
    const double n = static_cast<double>(impl_->n_spins);
    const auto p = impl_->weights(temperature);

    double jx = 0.0, jz = 0.0, jz2 = 0.0, jy2 = 0.0;
    for (std::size_t q = 0; q < dim; ++q) {
        jx += p[q] * impl_->jx_diag[q];
        jz += p[q] * impl_->jz_diag[q];
        jz2 += p[q] * impl_->jz2_diag[q];
        jy2 += p[q] * impl_->jy2_diag[q];
    }
    // <J^y> and Cov(J^y, J^z) vanish exactly for real eigenvectors
    const double var_jy = jy2;
    const double var_jz = jz2 - jz * jz;

    impl_->build_jy_elements();
    double fq = 0.0;
    const double* m = impl_->jy_elems.data();
    for (std::size_t a = 0; a < dim; ++a) {
        for (std::size_t b = a + 1; b < dim; ++b) {
            const double ps = p[a] + p[b];
            if (ps <= 1e-300) continue;
            const double d = p[a] - p[b];
            const double el = m[a * dim + b];
            fq += 2.0 * (d * d / ps) * el * el;
        }
    }
    fq *= 2.0 / n;

    Result res;
    res.obs.jx = jx;
    res.obs.var_jz = var_jz;
    res.obs.var_jy = var_jy;
    res.obs.cov_yz = 0.0;
    const double min_perp = std::min(var_jy, var_jz);
    const double j2 = jx * jx + jz * jz;
    if (j2 <= 0.0)
        throw numerical_error("xi_R^2 undefined at this temperature: |<J>| = 0");
    res.obs.xi2 = n * min_perp / j2;
    res.obs.fq = fq;
    res.obs.gap = impl_->evals[1] - impl_->evals[0];
    energy_entropy(temperature, res.energy_per_spin, res.entropy_per_spin);
    return res;
}

ThermalSolver::Result thermal_observables(const ModelSpec& model, double temperature) {
    return ThermalSolver(model).at_temperature(temperature);
}

// ---------------------------------------------------------------------------
// real-time ramp

RampSeries evolve_ramp(const ModelSpec& base, const RampSchedule& ramp, double dt,
                       double stride) {
    ramp.validate();
    if (base.lattice.n_sites() > kMaxSpinsDynamics)
        throw config_error("ramp evolution limited to N <= " +
                           std::to_string(kMaxSpinsDynamics));
    if (!(dt > 0.0)) throw config_error("dt must be > 0");

    const Hamiltonian ham(base.with_omega(ramp.omega_i));
    const std::size_t dim = ham.dimension();
    const int n_spins = ham.n_spins();

    // crude infinity-norm bound for RK4 stability on the shifted operator
    const double norm_bound = 0.25 * std::abs(base.coupling * base.delta) * n_spins +
                              0.5 * base.coupling * base.lattice.dim * n_spins +
                              0.5 * ramp.omega_i * n_spins;
    if (dt * 2.0 * norm_bound > 2.5)
        throw config_error("dt too large for stable integration; need dt < " +
                           std::to_string(1.25 / norm_bound));

    GroundResult gs = ground_and_gap(base.with_omega(ramp.omega_i));
    std::vector<cplx> psi(dim);
    for (std::size_t i = 0; i < dim; ++i) psi[i] = gs.ground[i];

    const double t_end_raw = ramp.tau + ramp.hold;
    if (!(stride > 0.0)) stride = t_end_raw / 512.0;
    const long per_tau = std::max(1L, std::lround(ramp.tau / stride));
    stride = ramp.tau / per_tau;
    const long n_samples = std::lround(std::ceil(t_end_raw / stride - 1e-9));
    const int per = std::max(1, static_cast<int>(std::ceil(stride / dt)));
    const double h = stride / per;

    std::vector<cplx> phi(dim), k1(dim), k2(dim), k3(dim), k4(dim), y(dim);
    constexpr cplx mi(0.0, -1.0);

    auto stage = [&](const std::vector<cplx>& in, std::vector<cplx>& k, double t_stage,
                     double shift) {
        ham.apply_at_field(in.data(), phi.data(), schedule_value(ramp, t_stage));
        for (std::size_t i = 0; i < dim; ++i) k[i] = mi * (phi[i] - shift * in[i]);
    };

    RampSeries out;
    out.series.reserve(n_samples + 1);
    out.series.push_back({0.0, ramp.omega_i, state_observables(std::span<const cplx>(psi), base)});

    double t = 0.0;
    for (long s = 0; s < n_samples; ++s) {
        for (int i = 0; i < per; ++i) {
            // mean-energy shift: exact up to a global phase, keeps the RK4
            // error governed by the energy spread instead of |E_0|
            ham.apply_at_field(psi.data(), phi.data(), schedule_value(ramp, t));
            double shift = 0.0;
            for (std::size_t q = 0; q < dim; ++q)
                shift += (std::conj(psi[q]) * phi[q]).real();

            for (std::size_t q = 0; q < dim; ++q) k1[q] = mi * (phi[q] - shift * psi[q]);
            for (std::size_t q = 0; q < dim; ++q) y[q] = psi[q] + 0.5 * h * k1[q];
            stage(y, k2, t + 0.5 * h, shift);
            for (std::size_t q = 0; q < dim; ++q) y[q] = psi[q] + 0.5 * h * k2[q];
            stage(y, k3, t + 0.5 * h, shift);
            for (std::size_t q = 0; q < dim; ++q) y[q] = psi[q] + h * k3[q];
            stage(y, k4, t + h, shift);
            for (std::size_t q = 0; q < dim; ++q)
                psi[q] += (h / 6.0) * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q]);
            t += h;
        }
        t = (s + 1) * stride;

        double nrm = 0.0;
        for (const cplx& a : psi) nrm += std::norm(a);
        nrm = std::sqrt(nrm);
        out.max_norm_drift = std::max(out.max_norm_drift, std::abs(nrm - 1.0));
        if (out.max_norm_drift > 1e-8)
            throw numerical_error("norm drift " + std::to_string(out.max_norm_drift) +
                                  " exceeds 1e-8: reduce dt");

        out.series.push_back(
            {t, schedule_value(ramp, t), state_observables(std::span<const cplx>(psi), base)});
    }
    out.final_state = std::move(psi);
    return out;
}

}  // namespace xxz::ed
