#ifndef KNASTER_LABELING_HPP
#define KNASTER_LABELING_HPP

#include "knaster/geometry.hpp"
#include "knaster/mesh.hpp"

#include <string>
#include <vector>

namespace knaster {

enum class Strategy {
    NotCloser,          // { i : lambda_i(F(x)) <= lambda_i(x) + tau }
    MaxGain,            // argmax set of lambda_i(x) - lambda_i(F(x))
    FirstIndexReduced,  // reduced single-label rule; known to lose fixed points
};

struct LabelingStrategy {
    Strategy kind = Strategy::NotCloser;
    double tau = 1e-12;   // absolute tolerance on barycentric comparisons
};

std::string strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);   // throws ConfigError

// C_i membership of a vertex from the barycentric coordinates of the point
// and of its image. Throws std::invalid_argument on dimension mismatch.
std::vector<int> compute_labels(const Barycentric& lam_x, const Barycentric& lam_fx,
                                const LabelingStrategy& strategy);

// True iff the d+1 corners can be assigned distinct labels 0..d from their
// label sets (system of distinct representatives; augmenting-path matching).
bool is_sperner(const std::vector<std::vector<int>>& cell_label_sets);

// Sperner face condition: every evaluated vertex of an alive cell must carry
// at least one label belonging to the smallest root face containing it
// (an index i with lambda_i(x) > tau).
bool face_cover_check(const Mesh& mesh, double tau = 1e-12);

}  // namespace knaster

#endif
