#include <doctest.h>

#include <cmath>
#include <numbers>

#include "xxzlab/errors.hpp"
#include "xxzlab/lattice.hpp"

using namespace xxz;

TEST_CASE("smallest ring: d=1, L=2") {
    const Lattice lat = build_lattice(1, 2);
    CHECK(lat.spec.n_sites() == 2);
    CHECK(lat.momenta.size() == 2);
    CHECK(lat.momenta[0].k[0] == doctest::Approx(0.0));
    CHECK(lat.momenta[1].k[0] == doctest::Approx(std::numbers::pi));
    REQUIRE(lat.neighbors.size() == 2);
    // both entries of site 0 are site 1 and vice versa
    CHECK(lat.neighbors[0] == std::vector<int>{1, 1});
    CHECK(lat.neighbors[1] == std::vector<int>{0, 0});
}

TEST_CASE("site and momentum counts follow N = L^d") {
    const Lattice l2 = build_lattice(2, 4);
    CHECK(l2.spec.n_sites() == 16);
    CHECK(l2.momenta.size() == 16);
    CHECK(l2.spec.coordination() == 4);

    const Lattice l3 = build_lattice(3, 3);
    CHECK(l3.spec.n_sites() == 27);
    CHECK(l3.momenta.size() == 27);
    CHECK(l3.spec.coordination() == 6);
}

TEST_CASE("build_lattice rejects bad arguments") {
    CHECK_THROWS_AS(build_lattice(0, 4), config_error);
    CHECK_THROWS_AS(build_lattice(4, 4), config_error);
    CHECK_THROWS_AS(build_lattice(2, 1), config_error);
}

TEST_CASE("row-major site indexing") {
    const Lattice lat = build_lattice(2, 3);
    // coord (c0, c1) -> c0 * L + c1
    CHECK(lat.site_index({1, 0, 0}) == 3);
    CHECK(lat.site_index({1, 2, 0}) == 5);
    for (int i = 0; i < lat.spec.n_sites(); ++i)
        CHECK(lat.site_index(lat.site_coord(i)) == i);
}

TEST_CASE("gamma_k reference values") {
    const Lattice l2 = build_lattice(2, 4);
    CHECK(gamma_k(l2.spec, 1.0, l2.momenta[0]) == doctest::Approx(2.0));  // gamma_0 = d*J
    // k = (pi, pi) is n = (2, 2) on L = 4
    const int ipp = l2.site_index({2, 2, 0});
    CHECK(gamma_k(l2.spec, 1.0, l2.momenta[ipp]) == doctest::Approx(-2.0));

    const Lattice l1 = build_lattice(1, 2);
    CHECK(gamma_k(l1.spec, 1.0, l1.momenta[1]) == doctest::Approx(-1.0));  // cos(pi)
}

TEST_CASE("momentum grid closure, gamma parity, zero sum") {
    for (auto [d, L] : {std::pair{1, 2}, {1, 7}, {2, 3}, {2, 4}, {3, 2}, {3, 3}}) {
        const Lattice lat = build_lattice(d, L);
        const int n = lat.spec.n_sites();
        REQUIRE(static_cast<int>(lat.momenta.size()) == n);

        double gsum = 0.0;
        for (int i = 0; i < n; ++i) {
            const int j = lat.negated[i];
            // componentwise k' = -k mod 2*pi
            for (int a = 0; a < d; ++a)
                CHECK((lat.momenta[i].n[a] + lat.momenta[j].n[a]) % L == 0);
            const double gi = gamma_k(lat.spec, 1.3, lat.momenta[i]);
            const double gj = gamma_k(lat.spec, 1.3, lat.momenta[j]);
            CHECK(gi == gj);  // bit-identical by the folded cosine
            gsum += gi;
        }
        CHECK(std::abs(gsum) <= 1e-12 * n);  // no on-site coupling
    }
}

TEST_CASE("neighbor table symmetry and regularity") {
    for (auto [d, L] : {std::pair{1, 2}, {1, 5}, {2, 2}, {2, 4}, {3, 3}}) {
        const Lattice lat = build_lattice(d, L);
        const int z = lat.spec.coordination();
        for (int i = 0; i < lat.spec.n_sites(); ++i) {
            REQUIRE(static_cast<int>(lat.neighbors[i].size()) == z);
            for (int j : lat.neighbors[i]) {
                CHECK(j != i);  // no self-neighbors
                // symmetric with matching multiplicity
                const auto& back = lat.neighbors[j];
                CHECK(std::count(back.begin(), back.end(), i) ==
                      std::count(lat.neighbors[i].begin(), lat.neighbors[i].end(), j));
            }
        }
    }
}

TEST_CASE("rectangular extents") {
    const Lattice lat = build_lattice(2, {3, 4, 0});
    CHECK(lat.spec.n_sites() == 12);
    CHECK(lat.momenta.size() == 12);
    CHECK_FALSE(lat.spec.is_cubic());
    for (const auto& nb : lat.neighbors) CHECK(nb.size() == 4);
}
