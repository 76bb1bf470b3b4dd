#ifndef KNASTER_TRANSFORM_HPP
#define KNASTER_TRANSFORM_HPP

#include "knaster/geometry.hpp"
#include "knaster/labeling.hpp"
#include "knaster/mesh.hpp"
#include "knaster/problem.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace knaster {

// Zero search G(x) = 0 over the unit simplex, to be turned into the
// injective fixed-point form F_i(x) = x_i (1 - damping U_i(G(x)) / c_i).
struct ZeroProblem {
    int d = 0;
    std::string name;
    std::function<Point(const Point&)> G;
    std::function<Point(const Point&)> U;   // componentwise gauge; empty = square
    std::vector<double> c;                  // positive scale estimates
    double damping = 0.9;
};

// The default gauge U_i(g) = g_i^2.
Point square_gauge(const Point& g);

// c_i = 1.05 * max of U_i(G(x)) over the corners, edge midpoints and
// `samples` seeded pseudo-random simplex points. Deterministic given seed.
std::vector<double> estimate_c(const ZeroProblem& zp, int samples, std::uint32_t seed);

// Builds F from zp (zp.c must be positive; throws ConfigError otherwise).
// The result carries a gauge callback so vertices can cache U(G(x)).
Problem to_fixed_point(const ZeroProblem& zp);

// Recompute every evaluated vertex's image and labels for new scales from
// the cached gauge values -- no new G evaluations. Refreshes the Sperner
// flags of alive cells. Returns how many vertices changed label sets.
// Throws ConfigError for nonpositive new_c, std::logic_error if a vertex
// lacks cached gauge data.
int rescale_and_relabel(Mesh& mesh, const ZeroProblem& zp, const std::vector<double>& new_c,
                        const LabelingStrategy& strategy);

// V^-1 o F o V: turns a self-map of [0,1]^d into one of the unit simplex.
// An image outside the cube raises DomainViolation at evaluation time.
Problem wrap_cube(int d, const std::string& name, std::function<Point(const Point&)> f_cube);

}  // namespace knaster

#endif
