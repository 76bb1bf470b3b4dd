#ifndef KNASTER_PROBLEM_HPP
#define KNASTER_PROBLEM_HPP

#include "knaster/geometry.hpp"

#include <functional>
#include <string>
#include <vector>

namespace knaster {

// A continuous self-map of the unit d-simplex.
struct Problem {
    int d = 0;
    std::string name;
    std::function<Point(const Point&)> F;
    // For zero-search transforms: x -> U(G(x)), cached per vertex so the
    // scales c_i can be updated later without re-evaluating G.
    std::function<Point(const Point&)> gauge;
    bool transformed = false;   // built by the zero-search transformation
    std::vector<Point> known_fixed_points;   // testing/reporting aid only
    std::string fixed_point_note;            // e.g. "every point of the diagonal"
};

// x -> A x + b.
struct AffineSpec {
    int d = 0;
    std::vector<std::vector<double>> A;
    std::vector<double> b;
};

// Built-in problems: half (any d), swap (d = 2), contraction (any d),
// contraction-eps (d >= 2). eps applies to contraction-eps only: empty
// selects the default vector, a single value is broadcast to all components.
// Throws ConfigError for unknown names or inapplicable dimensions.
Problem builtin(const std::string& name, int d, const std::vector<double>& eps = {});

std::vector<std::string> builtin_names();

// Throws ConfigError on A/b dimension mismatch.
Problem from_affine(const AffineSpec& spec);

// Default disturbance for contraction-eps, truncated/extended to d entries.
std::vector<double> default_epsilon(int d);

}  // namespace knaster

#endif
