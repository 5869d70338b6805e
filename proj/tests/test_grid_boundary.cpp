#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "vfpns/boundary.hpp"
#include "vfpns/errors.hpp"
#include "vfpns/grid.hpp"

using namespace vfpns;

TEST_CASE("grid coordinate tables") {
    Grid g = build_grid({128, 32, 8.0});
    CHECK(g.dx == doctest::Approx(1.0 / 128).epsilon(1e-15));
    CHECK(g.x[1] == doctest::Approx(1.0 / 256).epsilon(1e-15));
    CHECK(g.dv == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g.v[0] == doctest::Approx(-7.75).epsilon(1e-15));
    CHECK(g.v[31] == doctest::Approx(7.75).epsilon(1e-15));
}

TEST_CASE("velocity table symmetric to the bit") {
    for (int nv : {4, 10, 16, 32}) {
        Grid g = build_grid({8, nv, 8.0});
        for (int m = 0; m < nv; ++m)
            CHECK(g.v[m] + g.v[nv - 1 - m] == 0.0);
    }
}

TEST_CASE("grid tables reproducible") {
    Grid a = build_grid({32, 16, 8.0});
    Grid b = build_grid({32, 16, 8.0});
    CHECK(a.x == b.x);
    CHECK(a.v == b.v);
}

TEST_CASE("invalid specs rejected") {
    CHECK_THROWS_AS(build_grid({3, 16, 8.0}), ConfigError);
    CHECK_THROWS_AS(build_grid({16, 3, 8.0}), ConfigError);
    CHECK_THROWS_AS(build_grid({16, 15, 8.0}), ConfigError);  // odd nv
    CHECK_THROWS_AS(build_grid({16, 16, -1.0}), ConfigError);
}

TEST_CASE("cfl timestep") {
    CHECK(cfl_timestep({128, 32, 8.0}) == doctest::Approx(1.0 / 5120).epsilon(1e-15));
    CHECK(cfl_timestep({16, 32, 8.0}) == doctest::Approx(1.0 / 640).epsilon(1e-15));
    for (int nx : {4, 16, 37, 128}) {
        GridSpec gs{nx, 16, 8.0};
        CHECK(cfl_timestep(gs) * gs.vmax <= 1.0 / nx);
    }
}

TEST_CASE("gravity potential") {
    Grid g = build_grid({128, 4, 8.0});
    Field2D phi = gravity_potential(g, 1.0);
    CHECK(phi(1, 1) == doctest::Approx(1.0 / 256).epsilon(1e-15));
    Field2D phi0 = gravity_potential(g, 0.0);
    for (int jp = 0; jp <= g.nx + 1; ++jp)
        for (int j = 0; j <= g.nx + 1; ++j)
            CHECK(phi0(j, jp) == 0.0);
    // centered difference of the linear potential is exact at every interior cell
    for (int jp = 1; jp <= g.nx; ++jp)
        for (int j = 1; j <= g.nx; ++j) {
            const double d = (phi(j, jp + 1) - phi(j, jp - 1)) / (2.0 * g.dx);
            CHECK(d == doctest::Approx(1.0).epsilon(1e-12));
        }
}

TEST_CASE("epsilon profile closed-form values") {
    Grid g = build_grid({64, 4, 8.0});
    const double eps0 = 1e-3;
    Field2D eps = epsilon_profile(g, eps0);
    // on the centerline s = 0 the profile evaluates to eps0 + tanh(10)
    {
        const double expect = eps0 + 0.5 * (std::tanh(10.0) + std::tanh(10.0));
        CHECK(expect == doctest::Approx(eps0 + std::tanh(10.0)).epsilon(1e-12));
    }
    // far left edge: s = -0.5 puts the profile back at the eps0 floor
    {
        const double s = 0.0 - 0.5 - 0.25 * std::sin(0.0);
        const double expect =
            eps0 + 0.5 * (std::tanh(10.0 - 80.0 * s) + std::tanh(10.0 + 80.0 * s));
        CHECK(expect == doctest::Approx(eps0).epsilon(1e-6));
    }
    double lo = 1e30, hi = -1e30;
    for (int jp = 1; jp <= g.nx; ++jp)
        for (int j = 1; j <= g.nx; ++j) {
            lo = std::min(lo, eps(j, jp));
            hi = std::max(hi, eps(j, jp));
        }
    CHECK(lo > 0.0);
    CHECK(hi <= 1.0 + eps0 + 1e-12);
}

TEST_CASE("specular reflection ghosts") {
    PhaseField f(8, 6);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int jp = 1; jp <= 8; ++jp)
        for (int j = 1; j <= 8; ++j) {
            double* blk = f.block(j, jp);
            for (size_t k = 0; k < f.block_size(); ++k) blk[k] = dist(rng);
        }
    fill_ghost_f_specular(f);
    // ghost (0,jp;m,mp) = interior (1,jp; nv-1-m, mp), same for the other walls
    for (int jp = 1; jp <= 8; ++jp)
        for (int mp = 0; mp < 6; ++mp)
            for (int m = 0; m < 6; ++m) {
                CHECK(f.at(0, jp, m, mp) == f.at(1, jp, 5 - m, mp));
                CHECK(f.at(9, jp, m, mp) == f.at(8, jp, 5 - m, mp));
                CHECK(f.at(jp, 0, m, mp) == f.at(jp, 1, m, 5 - mp));
                CHECK(f.at(jp, 9, m, mp) == f.at(jp, 8, m, 5 - mp));
            }

    SUBCASE("idempotent") {
        PhaseField f2 = f;
        fill_ghost_f_specular(f2);
        for (size_t k = 0; k < f.size(); ++k) CHECK(f2.data()[k] == f.data()[k]);
    }

    SUBCASE("corner composition order invariant") {
        for (int mp = 0; mp < 6; ++mp)
            for (int m = 0; m < 6; ++m)
                CHECK(f.at(0, 0, m, mp) == f.at(1, 1, 5 - m, 5 - mp));
    }
}

TEST_CASE("specular ghosts act as identity on even distributions") {
    Grid g = build_grid({4, 6, 8.0});
    PhaseField f(4, 6);
    for (int jp = 1; jp <= 4; ++jp)
        for (int j = 1; j <= 4; ++j)
            for (int mp = 0; mp < 6; ++mp)
                for (int m = 0; m < 6; ++m)
                    f.at(j, jp, m, mp) = std::exp(-g.v[m] * g.v[m] - 0.3 * g.v[mp] * g.v[mp]);
    fill_ghost_f_specular(f);
    for (int jp = 1; jp <= 4; ++jp)
        for (int mp = 0; mp < 6; ++mp)
            for (int m = 0; m < 6; ++m)
                CHECK(f.at(0, jp, m, mp) == f.at(1, jp, m, mp));
}

TEST_CASE("zero distribution keeps zero ghosts") {
    PhaseField f(4, 4);
    fill_ghost_f_specular(f);
    for (size_t k = 0; k < f.size(); ++k) CHECK(f.data()[k] == 0.0);
}

TEST_CASE("no-slip ghosts") {
    VecField2D u(6);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int jp = 1; jp <= 6; ++jp)
        for (int j = 1; j <= 6; ++j) {
            u.x(j, jp) = dist(rng);
            u.y(j, jp) = dist(rng);
        }
    u.x(1, 2) = 0.3;
    fill_ghost_u_noslip(u);
    CHECK(u.x(0, 2) == -0.3);
    for (int jp = 1; jp <= 6; ++jp) {
        CHECK(0.5 * (u.x(0, jp) + u.x(1, jp)) == 0.0);  // wall midpoint vanishes
        CHECK(0.5 * (u.y(7, jp) + u.y(6, jp)) == 0.0);
    }
    SUBCASE("zero field") {
        VecField2D z(6);
        fill_ghost_u_noslip(z);
        for (int jp = 0; jp <= 7; ++jp)
            for (int j = 0; j <= 7; ++j) {
                CHECK(z.x(j, jp) == 0.0);
                CHECK(z.y(j, jp) == 0.0);
            }
    }
    SUBCASE("idempotent") {
        VecField2D v = u;
        fill_ghost_u_noslip(v);
        for (int jp = 0; jp <= 7; ++jp)
            for (int j = 0; j <= 7; ++j) CHECK(v.x(j, jp) == u.x(j, jp));
    }
}

TEST_CASE("neumann pressure ghosts") {
    Grid g = build_grid({6, 4, 8.0});
    Field2D p(6);
    p(1, 2) = 2.5;
    fill_ghost_p_neumann(p);
    CHECK(p(0, 2) == 2.5);

    SUBCASE("constant field") {
        Field2D c(6, 4.2);
        fill_ghost_p_neumann(c);
        for (int jp = 1; jp <= 6; ++jp)
            CHECK((c(1, jp) - c(0, jp)) / g.dx == 0.0);
    }
    SUBCASE("linear in x has zero wall-normal derivative across the wall") {
        Field2D q(6);
        for (int jp = 1; jp <= 6; ++jp)
            for (int j = 1; j <= 6; ++j)
                q(j, jp) = 3.0 + 2.0 * g.x[j];
        fill_ghost_p_neumann(q);
        for (int jp = 1; jp <= 6; ++jp) {
            CHECK((q(1, jp) - q(0, jp)) / g.dx == 0.0);
            CHECK((q(7, jp) - q(6, jp)) / g.dx == 0.0);
        }
    }
}

TEST_CASE("injection overwrites the entrance segment only") {
    Grid g = build_grid({64, 32, 8.0});  // dv = 0.5, so 2.25 is a cell center
    PhaseField f(64, 32);
    for (int jp = 1; jp <= 64; ++jp)
        for (int j = 1; j <= 64; ++j)
            for (size_t k = 0; k < f.block_size(); ++k) f.block(j, jp)[k] = 0.5;
    fill_ghost_f_specular(f);
    PhaseField spec_only = f;
    apply_injection(f, 0, g);
    apply_injection(f, 1, g);

    int m225 = -1, mneg3 = -1;
    for (int m = 0; m < 32; ++m) {
        if (std::abs(g.v[m] - 2.25) < 1e-12) m225 = m;
        if (std::abs(g.v[m] + 3.25) < 1e-12) mneg3 = m;
    }
    REQUIRE(m225 >= 0);
    REQUIRE(mneg3 >= 0);
    int jp_half = -1, jp_out = -1;
    for (int jp = 1; jp <= 64; ++jp) {
        if (std::abs(g.x[jp] - 0.5) < 0.75 * g.dx && jp_half < 0) jp_half = jp;
        if (std::abs(g.x[jp] - 0.3) < 0.75 * g.dx && jp_out < 0) jp_out = jp;
    }
    REQUIRE(jp_half > 0);
    REQUIRE(jp_out > 0);
    CHECK(f.at(0, jp_half, m225, 5) == 1.0);
    CHECK(f.at(0, jp_half, mneg3, 5) == 0.0);
    // outside the species-2 segment specular reflection stands
    CHECK(f.at(0, jp_out, m225, 5) == spec_only.at(0, jp_out, m225, 5));
}
