#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "vfpns/grid.hpp"
#include "vfpns/moments.hpp"

using namespace vfpns;

namespace {

// High-resolution Simpson quadrature of the 1D Gaussian density of species
// size i over [a, b]; the independent oracle for the truncated-box density.
double gauss1d_integral(int size, double u, double a, double b) {
    const int n = 40000;
    const double h = (b - a) / n;
    auto f = [&](double t) {
        return std::sqrt(size / (2.0 * M_PI)) * std::exp(-0.5 * size * (t - u) * (t - u));
    };
    double s = f(a) + f(b);
    for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
    return s * h / 3.0;
}

} // namespace

TEST_CASE("maxwellian values at the peak") {
    CHECK(maxwellian_value(1, 0.0, 0.0, 0.0, 0.0) == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-14));
    CHECK(maxwellian_value(2, 0.0, 0.0, 0.0, 0.0) == doctest::Approx(1.0 / M_PI).epsilon(1e-14));
    // reflection symmetry about the center
    for (double w : {0.25, 1.0, 3.5})
        CHECK(maxwellian_value(2, 0.4 + w, -0.1, 0.4, -0.1) ==
              doctest::Approx(maxwellian_value(2, 0.4 - w, -0.1, 0.4, -0.1)).epsilon(1e-14));
}

TEST_CASE("maxwellian density integrates to one on the production grid") {
    Grid g = build_grid({4, 32, 8.0});
    for (int size : {1, 2}) {
        for (double ux : {0.0, 1.5, -2.0}) {
            std::vector<double> blk(g.n_vcells());
            for (int mp = 0; mp < g.nv; ++mp)
                for (int m = 0; m < g.nv; ++m)
                    blk[m + static_cast<size_t>(g.nv) * mp] =
                        maxwellian_value(size, g.v[m], g.v[mp], ux, 0.3);
            const double n = trapezoid_moment_cell(blk.data(), g, [](double, double) { return 1.0; });
            // oracle: product of 1D truncated Gaussian integrals over the node span
            const double oracle = gauss1d_integral(size, ux, g.v[0], g.v[g.nv - 1]) *
                                  gauss1d_integral(size, 0.3, g.v[0], g.v[g.nv - 1]);
            CHECK(std::abs(n - oracle) < 1e-7);
            CHECK(std::abs(n - 1.0) < 1e-6);
        }
    }
}

TEST_CASE("odd integrands on even data vanish exactly") {
    Grid g = build_grid({4, 16, 8.0});
    std::vector<double> blk(g.n_vcells());
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(0.1, 2.0);
    // f even in v1 and in v2
    for (int mp = 0; mp < 8; ++mp)
        for (int m = 0; m < 8; ++m) {
            const double val = dist(rng);
            for (int sm : {0, 1})
                for (int sp : {0, 1}) {
                    const int mm = sm ? 15 - m : m;
                    const int mmp = sp ? 15 - mp : mp;
                    blk[mm + static_cast<size_t>(16) * mmp] = val;
                }
        }
    const double j1 = trapezoid_moment_cell(blk.data(), g, [](double v1, double) { return v1; });
    const double j2 = trapezoid_moment_cell(blk.data(), g, [](double, double v2) { return v2; });
    const double pxy = trapezoid_moment_cell(blk.data(), g, [](double v1, double v2) { return v1 * v2; });
    CHECK(j1 == 0.0);
    CHECK(j2 == 0.0);
    CHECK(pxy == 0.0);

    SUBCASE("even moments of odd data vanish exactly") {
        // f odd in v1
        for (int mp = 0; mp < 16; ++mp)
            for (int m = 0; m < 8; ++m) {
                const double val = dist(rng);
                blk[m + static_cast<size_t>(16) * mp] = val;
                blk[(15 - m) + static_cast<size_t>(16) * mp] = -val;
            }
        const double n = trapezoid_moment_cell(blk.data(), g, [](double, double) { return 1.0; });
        const double pxx = trapezoid_moment_cell(blk.data(), g, [](double v1, double) { return v1 * v1; });
        CHECK(n == 0.0);
        CHECK(pxx == 0.0);
    }
}

TEST_CASE("zero distribution gives zero moments") {
    Grid g = build_grid({4, 8, 8.0});
    std::vector<double> blk(g.n_vcells(), 0.0);
    CHECK(trapezoid_moment_cell(blk.data(), g, [](double, double) { return 1.0; }) == 0.0);
}

TEST_CASE("trapezoid moment is linear in f") {
    Grid g = build_grid({4, 8, 8.0});
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> a(g.n_vcells()), b(g.n_vcells()), c(g.n_vcells());
    for (size_t k = 0; k < a.size(); ++k) {
        a[k] = dist(rng);
        b[k] = dist(rng);
        c[k] = 2.0 * a[k] + 3.0 * b[k];
    }
    auto w = [](double v1, double v2) { return 1.0 + v1 + v2 * v2; };
    const double ma = trapezoid_moment_cell(a.data(), g, w);
    const double mb = trapezoid_moment_cell(b.data(), g, w);
    const double mc = trapezoid_moment_cell(c.data(), g, w);
    CHECK(mc == doctest::Approx(2.0 * ma + 3.0 * mb).epsilon(1e-12));
}

TEST_CASE("fused cell moments agree with the generic reduction") {
    Grid g = build_grid({4, 12, 6.0});
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> blk(g.n_vcells());
    for (auto& v : blk) v = dist(rng);
    const CellMoments cm = moments_cell(blk.data(), g);
    CHECK(cm.n == doctest::Approx(trapezoid_moment_cell(blk.data(), g, [](double, double) {
               return 1.0;
           })).epsilon(1e-13));
    CHECK(cm.j1 == doctest::Approx(trapezoid_moment_cell(blk.data(), g, [](double v1, double) {
                return v1;
            })).epsilon(1e-13));
    CHECK(cm.pxy == doctest::Approx(trapezoid_moment_cell(blk.data(), g, [](double v1, double v2) {
                 return v1 * v2;
             })).epsilon(1e-13));
    CHECK(cm.pxx == doctest::Approx(trapezoid_moment_cell(blk.data(), g, [](double v1, double) {
                 return v1 * v1;
             })).epsilon(1e-13));
}

TEST_CASE("equilibrium moments reproduce n, J, P") {
    // f = n M_{u,i}: J = i n u and P = i n u(x)u + n I up to quadrature tails
    Grid g = build_grid({4, 32, 8.0});
    VecField2D u(4);
    for (int jp = 0; jp <= 5; ++jp)
        for (int j = 0; j <= 5; ++j) {
            u.x(j, jp) = 0.7;
            u.y(j, jp) = -1.2;
        }
    for (int size : {1, 2}) {
        PhaseField f = maxwellian_field(u, size, g);
        const double n0 = 0.8;
        for (size_t k = 0; k < f.size(); ++k) f.data()[k] *= n0;
        const MomentSet mom = compute_moments(f, g, size, nullptr);
        const double tol = 1e-5 * (1.0 + 1.2);
        for (int jp = 1; jp <= 4; ++jp)
            for (int j = 1; j <= 4; ++j) {
                CHECK(std::abs(mom.n(j, jp) - n0) < 1e-6);
                CHECK(std::abs(mom.J.x(j, jp) - size * n0 * 0.7) < tol);
                CHECK(std::abs(mom.J.y(j, jp) + size * n0 * 1.2) < tol);
                CHECK(std::abs(mom.pxx(j, jp) - (size * n0 * 0.7 * 0.7 + n0)) < 1e-4);
                CHECK(std::abs(mom.pxy(j, jp) - size * n0 * 0.7 * (-1.2)) < 1e-4);
                CHECK(mom.pxy(j, jp) == mom.pxy(j, jp));  // finite
            }
    }
}

TEST_CASE("composite density") {
    Grid g = build_grid({4, 8, 8.0});
    std::vector<Field2D> n;
    n.emplace_back(4, 1.0);
    n.emplace_back(4, 1.0);
    Field2D nu = composite_density(n, g);
    CHECK(nu(2, 2) == doctest::Approx(3.0).epsilon(1e-15));
    std::vector<Field2D> z;
    z.emplace_back(4, 0.0);
    CHECK(composite_density(z, g)(1, 1) == 0.0);
    std::vector<Field2D> one;
    one.emplace_back(4, 0.37);
    CHECK(composite_density(one, g)(1, 1) == doctest::Approx(0.37).epsilon(1e-15));
}

TEST_CASE("rho_eps closed form and limits") {
    Grid g = build_grid({4, 8, 8.0});
    SUBCASE("no particles") {
        std::vector<Field2D> n{Field2D(4, 0.0), Field2D(4, 0.0)};
        Field2D rho = rho_eps(n, constant_field(g, 1.0), 2.0, 0.5, 0.01, 1, g);
        for (int jp = 1; jp <= 4; ++jp)
            for (int j = 1; j <= 4; ++j) CHECK(rho(j, jp) == 1.0);
    }
    SUBCASE("single species closed form") {
        // N=1, alpha=1/2, dt=1, eps=1, kappa=2, n=1: rho = 1 + 2/3
        std::vector<Field2D> n{Field2D(4, 1.0)};
        Field2D rho = rho_eps(n, constant_field(g, 1.0), 2.0, 0.5, 1.0, 1, g);
        CHECK(rho(2, 2) == doctest::Approx(1.0 + 2.0 / 3.0).epsilon(1e-14));
    }
    SUBCASE("vanishing eps recovers 1 + kappa nu") {
        std::vector<Field2D> n{Field2D(4, 0.9), Field2D(4, 0.4)};
        const double kappa = 2.0;
        Field2D rho = rho_eps(n, constant_field(g, 1e-12), kappa, 0.5, 0.01, 1, g);
        const double nu = 0.9 + 2.0 * 0.4;
        CHECK(rho(1, 3) == doctest::Approx(1.0 + kappa * nu).epsilon(1e-9));
    }
    SUBCASE("always at least one") {
        std::mt19937 rng(23);
        std::uniform_real_distribution<double> dist(0.0, 3.0);
        std::vector<Field2D> n{Field2D(4), Field2D(4)};
        for (int jp = 0; jp <= 5; ++jp)
            for (int j = 0; j <= 5; ++j) {
                n[0](j, jp) = dist(rng);
                n[1](j, jp) = dist(rng);
            }
        for (int order : {1, 2}) {
            Field2D rho = rho_eps(n, constant_field(g, 0.37), 2.0, 0.25, 0.003, order, g);
            for (int jp = 1; jp <= 4; ++jp)
                for (int j = 1; j <= 4; ++j) CHECK(rho(j, jp) >= 1.0);
        }
    }
}
