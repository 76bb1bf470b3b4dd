#include "doctest.h"

#include "knaster/errors.hpp"
#include "knaster/geometry.hpp"
#include "knaster/problem.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace knaster;

namespace {

double fp_residual(const Problem& p, const Point& fp) {
    const Point fx = p.F(fp);
    double r = 0.0;
    for (std::size_t i = 0; i < fx.size(); ++i) r = std::max(r, std::abs(fx[i] - fp[i]));
    return r;
}

bool in_simplex(const Point& x, double tol = 1e-12) {
    double sum = 0.0;
    for (const double v : x) {
        if (v < -tol) return false;
        sum += v;
    }
    return sum <= 1.0 + tol;
}

Point random_simplex_point(std::mt19937& rng, int d) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Point x(d);
    double rest = 1.0;
    for (int i = 0; i < d; ++i) {
        x[i] = u(rng) * rest;
        rest -= x[i];
    }
    return x;
}

}  // namespace

TEST_CASE("builtin catalogue") {
    const std::vector<std::string> names = builtin_names();
    for (const char* n : {"half", "swap", "contraction", "contraction-eps"})
        CHECK(std::find(names.begin(), names.end(), n) != names.end());
    CHECK_THROWS_AS(builtin("spiral", 2), ConfigError);
    CHECK_THROWS_AS(builtin("half", 0), ConfigError);
}

TEST_CASE("known fixed points really are fixed") {
    for (const auto& [name, d] : std::vector<std::pair<std::string, int>>{
             {"half", 1}, {"half", 2}, {"half", 4},
             {"swap", 2},
             {"contraction", 1}, {"contraction", 2}, {"contraction", 3}, {"contraction", 5},
             {"contraction-eps", 2}, {"contraction-eps", 3}, {"contraction-eps", 4}}) {
        CAPTURE(name);
        CAPTURE(d);
        const Problem p = builtin(name, d);
        REQUIRE_FALSE(p.known_fixed_points.empty());
        for (const Point& fp : p.known_fixed_points) {
            CHECK(fp_residual(p, fp) <= 1e-14);
            CHECK(in_simplex(fp));
        }
    }
}

TEST_CASE("pinned values") {
    const Problem half = builtin("half", 2);
    CHECK(half.F({0.4, 0.2}) == Point{0.2, 0.1});

    const Problem swap = builtin("swap", 2);
    CHECK(swap.F({0.3, 0.7}) == Point{0.7, 0.3});
    CHECK_FALSE(swap.fixed_point_note.empty());

    const Problem con2 = builtin("contraction", 2);
    CHECK(con2.F({0.0, 0.0}) == Point{0.25, 0.25});
    CHECK(con2.known_fixed_points[0][0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    const Problem con3 = builtin("contraction", 3);
    CHECK(con3.known_fixed_points[0][0] == doctest::Approx(0.2).epsilon(1e-15));
    const Problem con4 = builtin("contraction", 4);
    CHECK(con4.known_fixed_points[0][0] == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
}

TEST_CASE("contraction-eps: defaults, broadcast, validation") {
    CHECK(default_epsilon(2) == std::vector<double>{0.011, 0.007});
    CHECK(default_epsilon(4) == std::vector<double>{0.011, 0.007, 0.005, 0.003});
    CHECK(default_epsilon(6) == std::vector<double>{0.011, 0.007, 0.005, 0.003, 0.003, 0.003});

    const Problem def = builtin("contraction-eps", 3);
    const Point& fp = def.known_fixed_points[0];
    // x_i = (1 + 2 d eps_i) / (2d - 1) with eps = (0.011, 0.007, 0.005).
    CHECK(fp[0] == doctest::Approx((1.0 + 6 * 0.011) / 5.0).epsilon(1e-15));
    CHECK(fp[1] == doctest::Approx((1.0 + 6 * 0.007) / 5.0).epsilon(1e-15));
    CHECK(fp[2] == doctest::Approx((1.0 + 6 * 0.005) / 5.0).epsilon(1e-15));

    const Problem broad = builtin("contraction-eps", 3, {0.01});
    CHECK(broad.known_fixed_points[0][2] == doctest::Approx((1.0 + 6 * 0.01) / 5.0));

    CHECK_THROWS_AS(builtin("contraction-eps", 1), ConfigError);
    CHECK_THROWS_AS(builtin("contraction-eps", 3, {0.1, 0.2}), ConfigError);
    CHECK_THROWS_AS(builtin("contraction", 2, {0.01}), ConfigError);
    CHECK_THROWS_AS(builtin("swap", 3), ConfigError);
}

TEST_CASE("builtins map the simplex into itself") {
    std::mt19937 rng(17);
    for (const auto& [name, d] : std::vector<std::pair<std::string, int>>{
             {"half", 3}, {"swap", 2}, {"contraction", 4}, {"contraction-eps", 4}}) {
        CAPTURE(name);
        const Problem p = builtin(name, d);
        for (int trial = 0; trial < 100; ++trial) {
            const Point x = random_simplex_point(rng, d);
            CHECK(in_simplex(p.F(x)));
        }
    }
}

TEST_CASE("from_affine matches the closed form and validates shape") {
    AffineSpec spec;
    spec.d = 2;
    spec.A = {{0.5, 0.0}, {0.0, 0.5}};
    spec.b = {0.0, 0.0};
    const Problem aff = from_affine(spec);
    const Problem half = builtin("half", 2);
    std::mt19937 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const Point x = random_simplex_point(rng, 2);
        CHECK(aff.F(x) == half.F(x));   // bitwise equal on purpose
    }

    AffineSpec bad = spec;
    bad.A = {{0.5, 0.0}};
    CHECK_THROWS_AS(from_affine(bad), ConfigError);
    bad = spec;
    bad.b = {0.0};
    CHECK_THROWS_AS(from_affine(bad), ConfigError);
    bad = spec;
    bad.A[0][0] = std::nan("");
    CHECK_THROWS_AS(from_affine(bad), ConfigError);
    bad = spec;
    bad.d = 0;
    CHECK_THROWS_AS(from_affine(bad), ConfigError);
}

TEST_CASE("general affine evaluation") {
    AffineSpec spec;
    spec.d = 2;
    spec.A = {{0.1, 0.2}, {0.3, 0.4}};
    spec.b = {0.05, -0.01};
    const Problem p = from_affine(spec);
    const Point y = p.F({1.0, 2.0});
    CHECK(y[0] == doctest::Approx(0.1 + 0.4 + 0.05).epsilon(1e-15));
    CHECK(y[1] == doctest::Approx(0.3 + 0.8 - 0.01).epsilon(1e-15));
}
