#ifndef KNASTER_SOLVER_HPP
#define KNASTER_SOLVER_HPP

#include "knaster/labeling.hpp"
#include "knaster/mesh.hpp"
#include "knaster/problem.hpp"
#include "knaster/trace.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace knaster {

struct SolverConfig {
    int max_steps = 64;
    long max_evaluations = 10000;
    double target_diameter = 1e-6;   // stop once every Sperner cell is below this
    LabelingStrategy labeling{};
    int initial_refinement = 0;
    bool record_trace = true;
    nlohmann::json trace_header_extra;   // merged into run_start (seed, mode, ...)
};

struct Candidate {
    Point point;        // minimal-residual vertex of the cell
    Point barycenter;
    double residual;    // |lambda(x) - lambda(F(x))|_inf at that vertex
    CellId cell;
    double diameter;
    bool spurious_origin = false;   // zero-search artifact at 0
};

struct StepReport {
    int step = 0;
    std::vector<EdgeId> bisected;
    bool ref_flag = false;       // main pass refined
    bool fallback_used = false;  // fallback pass refined
    long age_count = 0;
    long evaluations = 0;        // cumulative
};

struct SolveResult {
    std::vector<Candidate> candidates;
    long evaluations_used = 0;
    int steps_used = 0;
    std::string stop_reason;   // target-diameter | max-steps | max-evaluations | no-sperner
    SolveTrace trace;
    Mesh mesh;
};

inline double vertex_residual(const VertexRecord& rec) {
    double m = 0.0;
    for (std::size_t i = 0; i < rec.lam_x.size(); ++i)
        m = std::max(m, std::abs(rec.lam_x[i] - rec.lam_fx[i]));
    return m;
}

// One candidate per alive Sperner cell: its minimal-residual vertex, sorted
// by residual. Works on solver meshes and replayed traces alike.
std::vector<Candidate> mesh_candidates(const Mesh& mesh, bool transformed_problem);

// One outer iteration of the bisection loop per step(): age everything by 2,
// bisect eligible Sperner-incident edges oldest-first, evaluate midpoints as
// they appear, fall back to the lower age threshold if the main scan found
// nothing. Construction already evaluates the initial triangulation.
class Solver {
public:
    Solver(Problem problem, SolverConfig config);

    bool finished() const { return finished_; }
    const std::string& stop_reason() const { return stop_reason_; }
    StepReport step();

    const Mesh& mesh() const { return mesh_; }
    const Problem& problem() const { return problem_; }
    long evaluations() const { return evaluations_; }
    int steps_done() const { return steps_done_; }
    const SolveTrace& trace() const { return trace_; }

    std::vector<Candidate> candidates() const;
    SolveResult take_result();   // leaves the solver empty

private:
    void emit(nlohmann::json event);
    void evaluate_vertex(VertexId v);
    void refresh_sperner(const std::vector<CellId>& cells);
    bool sweep(long threshold_offset, StepReport& report);
    bool incident_to_sperner(EdgeId e) const;
    void check_stop_conditions();

    Problem problem_;
    SolverConfig config_;
    Mesh mesh_;
    SolveTrace trace_;
    long evaluations_ = 0;
    int steps_done_ = 0;
    bool finished_ = false;
    std::string stop_reason_;
};

SolveResult solve(Problem problem, SolverConfig config);

}  // namespace knaster

#endif
