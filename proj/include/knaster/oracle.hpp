#ifndef KNASTER_ORACLE_HPP
#define KNASTER_ORACLE_HPP

#include "knaster/mesh.hpp"
#include "knaster/problem.hpp"

#include <string>
#include <vector>

namespace knaster {

// Independent checks used by the test suite and `knaster verify`. None of
// these share code paths with the solver beyond the mesh itself.

struct GridMinimum {
    Point point;
    double residual;   // |F(x) - x|_inf
};

struct GridReport {
    int resolution = 0;
    double best_residual = 0.0;
    std::vector<GridMinimum> minima;   // sorted by residual, ascending
};

// Exhaustive scan of the barycentric lattice {k/res : sum k_i <= res}.
// A lattice point is reported when its residual is <= every neighbour's
// (single-unit transfers between homogeneous coordinates) and below 2/res,
// so each cluster around a true fixed point yields at least one entry.
GridReport grid_fixed_points(const Problem& problem, int resolution);

struct SpernerParityReport {
    long canonical_count = 0;   // cells fully labeled under canonical selection
    long sdr_count = 0;         // cells whose label sets admit a full SDR
    bool parity_odd = false;    // canonical_count % 2 == 1
};

// Classical parity check against the current labeling of an evaluated mesh.
// Canonical selection picks, per vertex, the smallest label in its set whose
// own barycentric coordinate exceeds tau; the face condition then makes the
// fully-labeled count odd. The raw SDR count is reported alongside because
// that is what the solver refines on -- it need not be odd.
SpernerParityReport sperner_parity(const Mesh& mesh, double tau = 1e-12);

struct EdgeHalvingReport {
    bool ok = false;
    int chain_length = 0;
    std::vector<double> lengths;   // max edge length of the tracked cell after each bisection
    std::string detail;            // first violation, empty when ok
};

// Follows the corner-pinned descent: always bisect a longest edge of the
// tracked cell, preferring one incident to the corner e_1, and descend into
// the child containing that corner. After every d bisections the max edge
// length must have halved exactly (tolerance 1e-12).
EdgeHalvingReport edge_halving_check(int d, int chain_length);

}  // namespace knaster

#endif
