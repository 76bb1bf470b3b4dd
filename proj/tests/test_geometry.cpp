#include "doctest.h"

#include "knaster/geometry.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace knaster;

TEST_CASE("unit simplex corners") {
    const Simplex s = unit_simplex(2);
    REQUIRE(s.dim() == 2);
    CHECK(s.vertices[0] == Point{0.0, 0.0});
    CHECK(s.vertices[1] == Point{1.0, 0.0});
    CHECK(s.vertices[2] == Point{0.0, 1.0});
    CHECK(unit_simplex(1).vertices.size() == 2);
    CHECK_THROWS_AS(unit_simplex(0), std::invalid_argument);
}

TEST_CASE("unit barycentric closed form") {
    const Barycentric lam = unit_barycentric({0.4, 0.2});
    REQUIRE(lam.size() == 3);
    CHECK(lam[0] == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(lam[1] == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(lam[2] == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("barycentric agrees with the unit-simplex fast path") {
    const Simplex s = unit_simplex(3);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        Point p(3);
        double rest = 1.0;
        for (int i = 0; i < 3; ++i) {
            p[i] = u(rng) * rest;
            rest -= p[i];
        }
        const Barycentric a = barycentric(p, s);
        const Barycentric b = unit_barycentric(p);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
    }
}

TEST_CASE("barycentric reconstructs the point on a skewed simplex") {
    Simplex s;
    s.vertices = {{0.1, -0.2, 0.3}, {1.5, 0.4, -0.1}, {-0.3, 2.1, 0.7}, {0.9, 0.9, 1.8}};
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> u(-0.5, 1.5);
    for (int trial = 0; trial < 40; ++trial) {
        const Point p{u(rng), u(rng), u(rng)};
        const Barycentric lam = barycentric(p, s);
        double sum = 0.0;
        for (const double l : lam) sum += l;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

        // Independent reconstruction with Eigen: p must equal sum lam_i v_i.
        Eigen::Vector3d rec = Eigen::Vector3d::Zero();
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 3; ++k) rec[k] += lam[i] * s.vertices[i][k];
        for (int k = 0; k < 3; ++k) CHECK(rec[k] == doctest::Approx(p[k]).epsilon(1e-10));
    }
}

TEST_CASE("barycentric rejects degenerate and mismatched input") {
    Simplex degenerate;
    degenerate.vertices = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}};
    CHECK_THROWS_AS(barycentric({0.2, 0.2}, degenerate), std::invalid_argument);
    CHECK_THROWS_AS(barycentric({0.2, 0.2, 0.2}, unit_simplex(2)), std::invalid_argument);
}

TEST_CASE("cube/simplex maps: pinned values and round trip") {
    // 2-d: (0.4, 0.2) has |x|_inf = 0.4, |x|_1 = 0.6.
    const Point y = cube_to_simplex({0.4, 0.2});
    CHECK(y[0] == doctest::Approx(4.0 / 15.0).epsilon(1e-15));
    CHECK(y[1] == doctest::Approx(2.0 / 15.0).epsilon(1e-15));
    const Point back = simplex_to_cube(y);
    CHECK(back[0] == doctest::Approx(0.4).epsilon(1e-13));
    CHECK(back[1] == doctest::Approx(0.2).epsilon(1e-13));

    CHECK(cube_to_simplex({0.0, 0.0}) == Point{0.0, 0.0});
    CHECK(simplex_to_cube({0.0, 0.0}) == Point{0.0, 0.0});

    // Cube corners land on the simplex face, axis points stay put.
    const Point diag = cube_to_simplex({1.0, 1.0});
    CHECK(diag[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(diag[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(cube_to_simplex({1.0, 0.0}) == Point{1.0, 0.0});

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 60; ++trial) {
        const Point x{u(rng), u(rng), u(rng)};
        const Point s = cube_to_simplex(x);
        double sum = 0.0;
        for (const double v : s) {
            CHECK(v >= -1e-15);
            sum += v;
        }
        CHECK(sum <= 1.0 + 1e-12);   // stays inside the simplex
        const Point rt = simplex_to_cube(s);
        for (int k = 0; k < 3; ++k) CHECK(rt[k] == doctest::Approx(x[k]).epsilon(1e-12));
    }
}

TEST_CASE("norms and distances") {
    CHECK(norm_1({0.3, -0.4}) == doctest::Approx(0.7));
    CHECK(norm_inf({0.3, -0.4}) == doctest::Approx(0.4));
    CHECK(dist({0.0, 0.0}, {3.0, 4.0}) == doctest::Approx(5.0));
    CHECK(dist_inf({0.0, 0.0}, {3.0, 4.0}) == doctest::Approx(4.0));
}
