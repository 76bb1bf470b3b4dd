#include "knaster/solver.hpp"

#include "knaster/errors.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace knaster {

namespace {

std::string fmt_point(const Point& p) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
    os << ")";
    return os.str();
}

}  // namespace

Solver::Solver(Problem problem, SolverConfig config)
    : problem_(std::move(problem)), config_(std::move(config)),
      mesh_(Mesh::init(problem_.d, config_.initial_refinement)) {
    if (config_.max_steps < 1) throw ConfigError("max_steps must be >= 1");
    if (config_.target_diameter < 0) throw ConfigError("target_diameter must be >= 0");
    if (!problem_.F) throw ConfigError("problem '" + problem_.name + "' has no evaluator");

    nlohmann::json header = config_.trace_header_extra;
    header["problem"] = problem_.name;
    header["d"] = problem_.d;
    header["labeling"] = strategy_name(config_.labeling.kind);
    header["tau"] = config_.labeling.tau;
    header["initial_refinement"] = config_.initial_refinement;
    header["max_steps"] = config_.max_steps;
    header["max_evaluations"] = config_.max_evaluations;
    header["target_diameter"] = config_.target_diameter;
    emit(SolveTrace::run_start(std::move(header)));

    // The initial triangulation is always evaluated in full, even if it
    // already exceeds max_evaluations; the budget gates refinement only.
    for (VertexId v = 0; v < static_cast<VertexId>(mesh_.vertex_count()); ++v)
        evaluate_vertex(v);
    refresh_sperner(mesh_.alive_cells());
    emit(SolveTrace::sperner_set(0, mesh_.alive_sperner_cells()));
    check_stop_conditions();
}

void Solver::emit(nlohmann::json event) {
    if (config_.record_trace) trace_.emit(std::move(event));
}

void Solver::evaluate_vertex(VertexId v) {
    VertexRecord& rec = mesh_.vertex(v);
    Point fx = problem_.F(rec.position);
    if (static_cast<int>(fx.size()) != problem_.d)
        throw DomainViolation("problem '" + problem_.name + "' returned a point of dimension " +
                              std::to_string(fx.size()) + " at " + fmt_point(rec.position));
    rec.lam_fx = unit_barycentric(fx);
    for (const double lam : rec.lam_fx)
        if (lam < -1e-9)
            throw DomainViolation("image of " + fmt_point(rec.position) + " under '" +
                                  problem_.name + "' lies outside the simplex: " + fmt_point(fx));
    rec.image = std::move(fx);
    rec.labels = compute_labels(rec.lam_x, rec.lam_fx, config_.labeling);
    if (problem_.gauge) rec.gauge = problem_.gauge(rec.position);
    rec.evaluated = true;
    ++evaluations_;
    emit(SolveTrace::vertex_evaluated(v, rec.position, rec.image, rec.labels));
}

void Solver::refresh_sperner(const std::vector<CellId>& cells) {
    std::vector<std::vector<int>> sets;
    for (const CellId c : cells) {
        sets.clear();
        for (const VertexId v : mesh_.cell(c).verts) sets.push_back(mesh_.vertex(v).labels);
        mesh_.set_sperner(c, is_sperner(sets));
    }
}

bool Solver::incident_to_sperner(EdgeId e) const {
    for (const CellId c : mesh_.edge(e).cells)
        if (mesh_.cell(c).alive && mesh_.cell(c).sperner) return true;
    return false;
}

void Solver::check_stop_conditions() {
    const std::vector<CellId> sperner = mesh_.alive_sperner_cells();
    if (sperner.empty()) {
        // Refinement only ever happens next to a Sperner cell, so a mesh
        // without one can never change again.
        finished_ = true;
        stop_reason_ = "no-sperner";
        return;
    }
    double dmax = 0.0;
    for (const CellId c : sperner) dmax = std::max(dmax, mesh_.cell_diameter(c));
    if (dmax <= config_.target_diameter) {
        finished_ = true;
        stop_reason_ = "target-diameter";
        return;
    }
    if (steps_done_ >= config_.max_steps) {
        finished_ = true;
        stop_reason_ = "max-steps";
        return;
    }
    if (evaluations_ >= config_.max_evaluations) {
        finished_ = true;
        stop_reason_ = "max-evaluations";
    }
}

StepReport Solver::step() {
    StepReport report;
    report.age_count = mesh_.age_count();
    report.evaluations = evaluations_;
    if (finished_) return report;

    mesh_.increment_ages();
    ++steps_done_;
    report.step = steps_done_;

    bool any = sweep(3, report);
    report.ref_flag = any;
    if (!any && !finished_) {
        // Fallback scan at the relaxed threshold, same Sperner-incidence
        // requirement, at most once per step.
        report.fallback_used = sweep(2, report);
        any = report.fallback_used;
    }
    if (any) {
        mesh_.set_age_count(mesh_.age_count() + 1);
        emit(SolveTrace::age_count_changed(mesh_.age_count()));
    }
    emit(SolveTrace::sperner_set(steps_done_, mesh_.alive_sperner_cells()));
    report.age_count = mesh_.age_count();
    report.evaluations = evaluations_;
    if (!finished_) check_stop_conditions();
    return report;
}

bool Solver::sweep(long threshold_offset, StepReport& report) {
    bool any = false;
    for (const EdgeId e : mesh_.eligible_edges(threshold_offset)) {
        if (!mesh_.edge(e).alive) continue;          // consumed earlier in this sweep
        if (!incident_to_sperner(e)) continue;
        if (evaluations_ >= config_.max_evaluations) {
            finished_ = true;
            stop_reason_ = "max-evaluations";
            break;
        }
        const auto [vm, new_cells] = mesh_.bisect_edge(e);
        const EdgeRecord& rec = mesh_.edge(e);
        emit(SolveTrace::edge_bisected(e, rec.a, rec.b, vm));
        evaluate_vertex(vm);
        refresh_sperner(new_cells);
        report.bisected.push_back(e);
        any = true;
    }
    return any;
}

std::vector<Candidate> mesh_candidates(const Mesh& mesh, bool transformed_problem) {
    std::vector<Candidate> out;
    for (const CellId c : mesh.alive_sperner_cells()) {
        const CellRecord& cell = mesh.cell(c);
        VertexId best = -1;
        double best_res = 0.0;
        for (const VertexId v : cell.verts) {
            const double r = vertex_residual(mesh.vertex(v));
            if (best < 0 || r < best_res) {
                best = v;
                best_res = r;
            }
        }
        Candidate cand;
        cand.point = mesh.vertex(best).position;
        cand.barycenter = mesh.cell_barycenter(c);
        cand.residual = best_res;
        cand.cell = c;
        cand.diameter = mesh.cell_diameter(c);
        if (transformed_problem) {
            double norm2 = 0.0;
            for (const double x : cand.point) norm2 += x * x;
            cand.spurious_origin = norm2 <= 1e-6 * 1e-6;
        }
        out.push_back(std::move(cand));
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
        if (a.residual != b.residual) return a.residual < b.residual;
        return a.cell < b.cell;
    });
    return out;
}

std::vector<Candidate> Solver::candidates() const {
    return mesh_candidates(mesh_, problem_.transformed);
}

SolveResult Solver::take_result() {
    SolveResult res;
    res.candidates = candidates();
    res.evaluations_used = evaluations_;
    res.steps_used = steps_done_;
    res.stop_reason = stop_reason_;
    res.trace = std::move(trace_);
    res.mesh = std::move(mesh_);
    return res;
}

SolveResult solve(Problem problem, SolverConfig config) {
    Solver solver(std::move(problem), std::move(config));
    while (!solver.finished()) solver.step();
    return solver.take_result();
}

}  // namespace knaster
