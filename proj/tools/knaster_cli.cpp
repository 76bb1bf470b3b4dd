// knaster — command-line front end for the fixed-point solver.
//
// Subcommands:
//   list         built-in problems
//   solve        run the solver, write trace / points files
//   verify       brute-force grid check, optionally against a trace
//   export-plot  dump vertices + cells of a trace step for external plotting
//
// Exit codes: 0 ok, 2 config error, 3 domain violation, 4 verification
// failure, 5 I/O. KNASTER_LOG={quiet|info|debug} controls stderr chatter.

#include "knaster/errors.hpp"
#include "knaster/geometry.hpp"
#include "knaster/labeling.hpp"
#include "knaster/oracle.hpp"
#include "knaster/problem.hpp"
#include "knaster/solver.hpp"
#include "knaster/trace.hpp"
#include "knaster/transform.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

namespace {

using namespace knaster;

// ---------------------------------------------------------------- logging

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("KNASTER_LOG");
        if (!env) return LogLevel::info;
        const std::string v(env);
        if (v == "quiet") return LogLevel::quiet;
        if (v == "debug") return LogLevel::debug;
        return LogLevel::info;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::info) std::cerr << "[knaster] " << msg << "\n";
}

void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::debug) std::cerr << "[knaster] " << msg << "\n";
}

// ---------------------------------------------------------------- helpers

std::string fmt_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_short(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt_point(const Point& p, std::string (*fmt)(double) = fmt_short) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) s += ", ";
        s += fmt(p[i]);
    }
    return s + ")";
}

std::string join_labels(const std::vector<int>& labels) {
    std::string s;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(labels[i]);
    }
    return s;
}

// ---------------------------------------------------------------- config

struct RunConfig {
    std::string problem;        // builtin name
    std::string config_path;    // JSON file: {name?, d, A, b, c?, damping?}
    int d = 2;
    int steps = 64;
    long max_evals = 10000;
    double target_diameter = 1e-6;
    std::string labeling = "not-closer";
    std::string mode = "fixed-point";
    std::string domain = "simplex";
    int initial_refinement = 0;
    std::vector<double> epsilon;
    std::string trace_out;
    std::string points_out;
    std::uint32_t seed = 0;
};

void add_problem_flags(CLI::App* cmd, RunConfig& rc) {
    cmd->add_option("--problem", rc.problem, "built-in problem name (see `list`)");
    cmd->add_option("--config", rc.config_path, "JSON problem file: {name?, d, A, b, c?, damping?}");
    cmd->add_option("--d", rc.d, "simplex dimension for built-in problems")->capture_default_str();
    cmd->add_option("--mode", rc.mode, "fixed-point | zero-search")->capture_default_str();
    cmd->add_option("--domain", rc.domain, "simplex | cube")->capture_default_str();
    cmd->add_option("--epsilon", rc.epsilon,
                    "disturbance for contraction-eps (one value or d values)")
        ->delimiter(',');
    cmd->add_option("--seed", rc.seed, "seed for scale estimation sampling")
        ->capture_default_str();
}

Problem build_problem(const RunConfig& rc) {
    const bool has_builtin = !rc.problem.empty();
    const bool has_config = !rc.config_path.empty();
    if (has_builtin == has_config)
        throw ConfigError("exactly one of --problem and --config is required");
    if (rc.mode != "fixed-point" && rc.mode != "zero-search")
        throw ConfigError("--mode must be 'fixed-point' or 'zero-search'");
    if (rc.domain != "simplex" && rc.domain != "cube")
        throw ConfigError("--domain must be 'simplex' or 'cube'");

    int d = rc.d;
    std::string name;
    AffineSpec spec;
    nlohmann::json cfg;
    if (has_config) {
        std::ifstream in(rc.config_path);
        if (!in) throw IoError("cannot open config file '" + rc.config_path + "'");
        try {
            in >> cfg;
            spec.d = cfg.at("d").get<int>();
            spec.A = cfg.at("A").get<std::vector<std::vector<double>>>();
            spec.b = cfg.at("b").get<std::vector<double>>();
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config '" + rc.config_path +
                              "' needs integer d, d x d matrix A, length-d vector b (" +
                              e.what() + ")");
        }
        d = spec.d;
        name = cfg.value("name", std::string("affine"));
    }

    if (rc.mode == "zero-search") {
        if (!has_config)
            throw ConfigError("zero-search mode needs --config (G is given as A, b)");
        if (!rc.epsilon.empty())
            throw ConfigError("--epsilon applies to the contraction-eps builtin only");
        ZeroProblem zp;
        zp.d = d;
        zp.name = name;
        Problem g = from_affine(spec);
        if (rc.domain == "cube") {
            // Zero search over the cube: compose with the simplex->cube map
            // so the solver still walks the simplex.
            zp.G = [G = g.F](const Point& y) { return G(simplex_to_cube(y)); };
        } else {
            zp.G = g.F;
        }
        zp.damping = cfg.value("damping", 0.9);
        if (cfg.contains("c")) {
            try {
                zp.c = cfg.at("c").get<std::vector<double>>();
            } catch (const nlohmann::json::exception& e) {
                throw ConfigError(std::string("config field 'c' must be a number array (") +
                                  e.what() + ")");
            }
        } else {
            zp.c = estimate_c(zp, 10000, rc.seed);
            log_info("estimated scales c = " + fmt_point(zp.c));
        }
        return to_fixed_point(zp);
    }

    Problem p;
    if (has_builtin) {
        p = builtin(rc.problem, d, rc.epsilon);
    } else {
        if (!rc.epsilon.empty())
            throw ConfigError("--epsilon applies to the contraction-eps builtin only");
        p = from_affine(spec);
        p.name = name;
    }
    if (rc.domain == "cube") {
        // The configured map is a self-map of [0,1]^d; pull it back.
        Problem wrapped = wrap_cube(d, p.name, p.F);
        return wrapped;
    }
    return p;
}

// ---------------------------------------------------------------- outputs

void write_points_csv(const std::string& path, const Mesh& mesh) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open points file '" + path + "'");
    out << "id";
    for (int i = 0; i < mesh.dim(); ++i) out << ",x_" << i;
    out << ",labels,residual\n";
    for (VertexId v = 0; v < static_cast<VertexId>(mesh.vertex_count()); ++v) {
        const VertexRecord& rec = mesh.vertex(v);
        if (!rec.evaluated) continue;
        out << v;
        for (const double x : rec.position) out << ',' << fmt_full(x);
        out << ',' << join_labels(rec.labels) << ',' << fmt_full(vertex_residual(rec)) << "\n";
    }
    if (!out) throw IoError("failed writing points file '" + path + "'");
}

void print_candidates(const std::vector<Candidate>& cands, std::size_t limit = 8) {
    std::cout << "candidates (" << cands.size() << " Sperner cell"
              << (cands.size() == 1 ? "" : "s") << "):\n";
    for (std::size_t i = 0; i < cands.size() && i < limit; ++i) {
        const Candidate& c = cands[i];
        std::cout << "  " << fmt_point(c.point) << "  residual " << fmt_short(c.residual)
                  << "  diameter " << fmt_short(c.diameter) << "  cell " << c.cell
                  << (c.spurious_origin ? "  [spurious origin]" : "") << "\n";
    }
    if (cands.size() > limit)
        std::cout << "  ... and " << (cands.size() - limit) << " more\n";
}

// ---------------------------------------------------------------- solve

int cmd_solve(const RunConfig& rc) {
    Problem problem = build_problem(rc);
    SolverConfig sc;
    sc.max_steps = rc.steps;
    sc.max_evaluations = rc.max_evals;
    sc.target_diameter = rc.target_diameter;
    sc.labeling.kind = strategy_from_name(rc.labeling);
    sc.initial_refinement = rc.initial_refinement;
    sc.trace_header_extra = {{"seed", rc.seed}, {"mode", rc.mode}, {"domain", rc.domain}};

    Solver solver(std::move(problem), sc);
    while (!solver.finished()) {
        const StepReport rep = solver.step();
        log_debug("step " + std::to_string(rep.step) + ": " +
                  std::to_string(rep.bisected.size()) + " bisection(s)" +
                  (rep.fallback_used ? " (fallback)" : "") +
                  ", age count " + std::to_string(rep.age_count) + ", evaluations " +
                  std::to_string(rep.evaluations));
    }
    SolveResult result = solver.take_result();

    std::cout << "problem " << solver.problem().name << " (d=" << solver.problem().d
              << "), labeling " << rc.labeling << "\n";
    std::cout << "stop: " << result.stop_reason << " | steps " << result.steps_used
              << " | evaluations " << result.evaluations_used << "\n";
    print_candidates(result.candidates);

    if (!rc.trace_out.empty()) {
        result.trace.save_file(rc.trace_out);
        log_info("trace written to " + rc.trace_out);
    }
    if (!rc.points_out.empty()) {
        write_points_csv(rc.points_out, result.mesh);
        log_info("points written to " + rc.points_out);
    }
    return 0;
}

// ---------------------------------------------------------------- list

int cmd_list() {
    std::cout << "built-in problems:\n"
              << "  half             F(x) = x/2, fixed point at the origin (any d)\n"
              << "  swap             F(x1,x2) = (x2,x1), fixed on the whole diagonal (d=2)\n"
              << "  contraction      F(x) = x/(2d) + 1/(2d), fixed point at 1/(2d-1)*(1,..,1)\n"
              << "  contraction-eps  contraction plus per-coordinate disturbance --epsilon (d>=2)\n"
              << "\n"
              << "user problems: --config file.json with {name?, d, A, b, c?, damping?};\n"
              << "fixed-point mode reads F(x) = Ax + b, zero-search mode reads G(x) = Ax + b.\n";
    return 0;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const RunConfig& rc, int resolution, const std::vector<double>& point,
               const std::string& trace_path) {
    Problem problem = build_problem(rc);
    const GridReport grid = grid_fixed_points(problem, resolution);
    const double tol = 2.0 / resolution;

    std::cout << "grid verify: problem " << problem.name << " (d=" << problem.d
              << "), resolution " << resolution << "\n";
    std::cout << "best residual " << fmt_short(grid.best_residual) << ", " << grid.minima.size()
              << " local minim" << (grid.minima.size() == 1 ? "um" : "a") << " below "
              << fmt_short(tol) << ":\n";
    const std::size_t shown = std::min<std::size_t>(grid.minima.size(), 16);
    for (std::size_t i = 0; i < shown; ++i)
        std::cout << "  " << fmt_point(grid.minima[i].point) << "  residual "
                  << fmt_short(grid.minima[i].residual) << "\n";
    if (grid.minima.size() > shown)
        std::cout << "  ... and " << (grid.minima.size() - shown) << " more\n";
    if (!problem.fixed_point_note.empty())
        std::cout << "note: " << problem.fixed_point_note << "\n";

    auto nearest = [&](const Point& x) {
        double best = std::numeric_limits<double>::infinity();
        for (const GridMinimum& m : grid.minima) best = std::min(best, dist_inf(x, m.point));
        return best;
    };

    bool ok = true;
    for (const Point& fp : problem.known_fixed_points) {
        const double gap = nearest(fp);
        const bool hit = gap <= tol + 1e-12;
        ok = ok && hit;
        std::cout << "known point " << fmt_point(fp) << ": nearest minimum at "
                  << fmt_short(gap) << (hit ? "  ok" : "  MISS") << "\n";
    }
    if (!point.empty()) {
        if (static_cast<int>(point.size()) != problem.d)
            throw ConfigError("--point needs " + std::to_string(problem.d) + " coordinates");
        const double gap = nearest(point);
        const bool hit = gap <= tol + 1e-12;
        ok = ok && hit;
        std::cout << "claimed point " << fmt_point(point) << ": nearest minimum at "
                  << fmt_short(gap) << (hit ? "  ok" : "  MISS") << "\n";
    }
    if (!trace_path.empty()) {
        const SolveTrace trace = SolveTrace::load_file(trace_path);
        const ReplayResult rep = replay_trace(trace);
        if (rep.mesh.dim() != problem.d)
            throw ConfigError("trace dimension " + std::to_string(rep.mesh.dim()) +
                              " does not match the problem (d=" + std::to_string(problem.d) +
                              ")");
        const bool transformed =
            rep.header.value("mode", std::string("fixed-point")) == "zero-search";
        int checked = 0;
        for (const Candidate& c : mesh_candidates(rep.mesh, transformed)) {
            if (c.residual >= 1e-3 || c.spurious_origin) continue;
            ++checked;
            const double gap = nearest(c.point);
            const bool hit = gap <= tol + 1e-12;
            ok = ok && hit;
            std::cout << "trace candidate " << fmt_point(c.point) << " (residual "
                      << fmt_short(c.residual) << "): nearest minimum at " << fmt_short(gap)
                      << (hit ? "  ok" : "  MISS") << "\n";
        }
        std::cout << "trace: " << checked << " converged candidate(s) cross-checked\n";
    }

    std::cout << (ok ? "VERIFY PASS" : "VERIFY FAIL") << "\n";
    return ok ? 0 : 4;
}

// ---------------------------------------------------------------- export

int cmd_export_plot(const std::string& trace_path, int step, const std::string& prefix) {
    const SolveTrace trace = SolveTrace::load_file(trace_path);
    const ReplayResult rep = replay_trace(trace, step);
    const Mesh& mesh = rep.mesh;

    const std::string vpath = prefix + "-vertices.csv";
    const std::string cpath = prefix + "-cells.csv";

    std::ofstream vout(vpath);
    if (!vout) throw IoError("cannot open '" + vpath + "'");
    vout << "id";
    for (int i = 0; i < mesh.dim(); ++i) vout << ",x_" << i;
    vout << ",labels\n";
    long nverts = 0;
    for (VertexId v = 0; v < static_cast<VertexId>(mesh.vertex_count()); ++v) {
        const VertexRecord& rec = mesh.vertex(v);
        if (!rec.evaluated) continue;
        vout << v;
        for (const double x : rec.position) vout << ',' << fmt_full(x);
        vout << ',' << join_labels(rec.labels) << "\n";
        ++nverts;
    }
    if (!vout) throw IoError("failed writing '" + vpath + "'");

    std::ofstream cout_(cpath);
    if (!cout_) throw IoError("cannot open '" + cpath + "'");
    cout_ << "id";
    for (int i = 0; i <= mesh.dim(); ++i) cout_ << ",v_" << i;
    cout_ << ",sperner\n";
    long ncells = 0;
    for (const CellId c : mesh.alive_cells()) {
        cout_ << c;
        for (const VertexId v : mesh.cell(c).verts) cout_ << ',' << v;
        cout_ << ',' << (mesh.cell(c).sperner ? 1 : 0) << "\n";
        ++ncells;
    }
    if (!cout_) throw IoError("failed writing '" + cpath + "'");

    std::cout << "step " << rep.last_step << ": " << nverts << " vertices -> " << vpath << ", "
              << ncells << " alive cells -> " << cpath << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"knaster — fixed points of simplex self-maps by Sperner-labeled bisection"};
    app.require_subcommand(1);

    RunConfig rc;

    CLI::App* list_cmd = app.add_subcommand("list", "list built-in problems");

    CLI::App* solve_cmd = app.add_subcommand("solve", "run the solver");
    add_problem_flags(solve_cmd, rc);
    solve_cmd->add_option("--steps", rc.steps, "maximum refinement steps")->capture_default_str();
    solve_cmd->add_option("--max-evals", rc.max_evals, "maximum F evaluations")
        ->capture_default_str();
    solve_cmd->add_option("--target-diameter", rc.target_diameter,
                          "stop once every Sperner cell is this small")
        ->capture_default_str();
    solve_cmd->add_option("--labeling", rc.labeling, "not-closer | max-gain | first-index")
        ->capture_default_str();
    solve_cmd
        ->add_option("--initial-refinement", rc.initial_refinement,
                     "uniform longest-edge passes before solving")
        ->capture_default_str();
    solve_cmd->add_option("--trace-out", rc.trace_out, "write the JSONL run trace here");
    solve_cmd->add_option("--points-out", rc.points_out, "write the evaluated-points CSV here");

    CLI::App* verify_cmd = app.add_subcommand("verify", "grid-search cross-check");
    add_problem_flags(verify_cmd, rc);
    int resolution = 64;
    std::vector<double> claim_point;
    std::string verify_trace;
    verify_cmd->add_option("--resolution", resolution, "barycentric grid resolution")
        ->capture_default_str();
    verify_cmd->add_option("--point", claim_point, "claimed fixed point to check")
        ->delimiter(',');
    verify_cmd->add_option("--trace", verify_trace, "trace file whose candidates to cross-check");

    CLI::App* export_cmd = app.add_subcommand("export-plot", "dump a trace step as CSV");
    std::string export_trace;
    int export_step = -1;
    std::string export_prefix = "plot";
    export_cmd->add_option("--trace", export_trace, "trace file to replay")->required();
    export_cmd->add_option("--step", export_step, "step to export (default: last)")
        ->capture_default_str();
    export_cmd->add_option("--out-prefix", export_prefix, "output file prefix")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*list_cmd) return cmd_list();
        if (*solve_cmd) return cmd_solve(rc);
        if (*verify_cmd) return cmd_verify(rc, resolution, claim_point, verify_trace);
        if (*export_cmd) return cmd_export_plot(export_trace, export_step, export_prefix);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DomainViolation& e) {
        std::cerr << "domain violation: " << e.what() << "\n";
        return 3;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 5;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
