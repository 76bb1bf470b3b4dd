#ifndef KNASTER_GEOMETRY_HPP
#define KNASTER_GEOMETRY_HPP

#include <vector>

namespace knaster {

// A point in R^d, plain Cartesian coordinates.
using Point = std::vector<double>;

// Barycentric weights lambda_0..lambda_d; they sum to 1.
using Barycentric = std::vector<double>;

// conv(v_0,...,v_d) given by its d+1 corners.
struct Simplex {
    std::vector<Point> vertices;
    int dim() const { return static_cast<int>(vertices.size()) - 1; }
};

// conv(0, e_1, ..., e_d). Throws std::invalid_argument for d < 1.
Simplex unit_simplex(int d);

// Barycentric coordinates of p with respect to s, computed by solving the
// d x d linear system in the edge vectors (partial pivoting). Throws
// std::invalid_argument on dimension mismatch or a degenerate simplex.
Barycentric barycentric(const Point& p, const Simplex& s);

// Fast path for the unit simplex: lambda = (1 - sum x_i, x_1, ..., x_d).
Barycentric unit_barycentric(const Point& p);

// Change of domain between [0,1]^d and the unit simplex:
//   cube_to_simplex(x) = (|x|_inf / |x|_1) x
//   simplex_to_cube(y) = (|y|_1 / |y|_inf) y
// Both map 0 to 0 by convention (the limit along rays).
Point cube_to_simplex(const Point& p);
Point simplex_to_cube(const Point& p);

double norm_1(const Point& p);
double norm_inf(const Point& p);
double dist(const Point& a, const Point& b);        // Euclidean
double dist_inf(const Point& a, const Point& b);

}  // namespace knaster

#endif
