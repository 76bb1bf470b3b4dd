#include "knaster/trace.hpp"

#include "knaster/errors.hpp"

#include <fstream>
#include <sstream>

namespace knaster {

using nlohmann::json;

void SolveTrace::emit(json event) { events_.push_back(std::move(event)); }

void SolveTrace::save(std::ostream& os) const {
    for (const auto& e : events_) os << e.dump() << '\n';
}

void SolveTrace::save_file(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open trace file for writing: " + path);
    save(os);
    os.flush();
    if (!os) throw IoError("failed writing trace file: " + path);
}

SolveTrace SolveTrace::load_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open trace file: " + path);
    SolveTrace t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        json e = json::parse(line, nullptr, false);
        if (e.is_discarded())
            throw ConfigError("trace " + path + ": line " + std::to_string(lineno) +
                              " is not valid JSON");
        t.emit(std::move(e));
    }
    return t;
}

json SolveTrace::run_start(json header) {
    header["v"] = 1;
    header["event"] = "run_start";
    return header;
}

json SolveTrace::vertex_evaluated(VertexId id, const Point& position, const Point& image,
                                  const std::vector<int>& labels) {
    return json{{"v", 1},        {"event", "vertex_evaluated"},
                {"id", id},      {"position", position},
                {"image", image}, {"labels", labels}};
}

json SolveTrace::edge_bisected(EdgeId edge, VertexId a, VertexId b, VertexId new_vertex) {
    return json{{"v", 1},
                {"event", "edge_bisected"},
                {"edge", edge},
                {"endpoints", json::array({a, b})},
                {"new_vertex", new_vertex}};
}

json SolveTrace::sperner_set(int step, const std::vector<CellId>& cells) {
    return json{{"v", 1}, {"event", "sperner_set"}, {"step", step}, {"cells", cells}};
}

json SolveTrace::age_count_changed(long value) {
    return json{{"v", 1}, {"event", "age_count_changed"}, {"value", value}};
}

namespace {

template <typename T>
T field(const json& e, const char* key) {
    const auto it = e.find(key);
    if (it == e.end())
        throw ConfigError(std::string("trace event missing field '") + key + "': " + e.dump());
    return it->get<T>();
}

std::string list_steps(const std::vector<int>& steps) {
    std::ostringstream os;
    for (std::size_t i = 0; i < steps.size(); ++i) os << (i ? ", " : "") << steps[i];
    return os.str();
}

}  // namespace

ReplayResult replay_trace(const SolveTrace& trace, int up_to_step) {
    const auto& events = trace.events();
    if (events.empty() || events[0].value("event", "") != "run_start")
        throw ConfigError("trace does not start with a run_start event");
    const json& header = events[0];
    const int d = field<int>(header, "d");
    const int init_ref = header.value("initial_refinement", 0);

    ReplayResult out;
    out.header = header;
    out.mesh = Mesh::init(d, init_ref);
    for (const auto& e : events)
        if (e.value("event", "") == "sperner_set") out.steps.push_back(field<int>(e, "step"));

    // The solver increments edge ages at the start of every step; the trace
    // marks a step's end with its sperner_set event, so the increment is
    // applied when the first event of a new step shows up.
    bool pending_increment = false;
    for (std::size_t i = 1; i < events.size(); ++i) {
        const json& e = events[i];
        const std::string kind = e.value("event", "");
        if (kind == "vertex_evaluated") {
            const auto id = field<VertexId>(e, "id");
            if (id < 0 || id >= static_cast<VertexId>(out.mesh.vertex_count()))
                throw ConfigError("trace evaluates unknown vertex " + std::to_string(id));
            VertexRecord& rec = out.mesh.vertex(id);
            rec.image = field<Point>(e, "image");
            rec.lam_fx = unit_barycentric(rec.image);
            rec.labels = field<std::vector<int>>(e, "labels");
            rec.evaluated = true;
        } else if (kind == "edge_bisected") {
            if (pending_increment) {
                out.mesh.increment_ages();
                pending_increment = false;
            }
            const auto eid = field<EdgeId>(e, "edge");
            if (eid < 0 || eid >= static_cast<EdgeId>(out.mesh.edge_count()))
                throw ConfigError("trace bisects unknown edge " + std::to_string(eid));
            const auto [vm, cells] = out.mesh.bisect_edge(eid);
            (void)cells;
            if (vm != field<VertexId>(e, "new_vertex"))
                throw ConfigError("trace replay diverged: bisection of edge " +
                                  std::to_string(eid) + " created vertex " + std::to_string(vm) +
                                  ", trace expected " +
                                  std::to_string(field<VertexId>(e, "new_vertex")));
        } else if (kind == "sperner_set") {
            if (pending_increment) {
                out.mesh.increment_ages();   // a step with no bisections still ages edges
                pending_increment = false;
            }
            out.last_step = field<int>(e, "step");
            out.sperner_cells = field<std::vector<CellId>>(e, "cells");
            if (out.last_step == up_to_step) break;
            pending_increment = true;
        } else if (kind == "age_count_changed") {
            out.mesh.set_age_count(field<long>(e, "value"));
        } else {
            throw ConfigError("trace has unknown event kind '" + kind + "'");
        }
    }
    if (up_to_step >= 0 && out.last_step != up_to_step)
        throw ConfigError("trace has no step " + std::to_string(up_to_step) +
                          "; available steps: " + list_steps(out.steps));
    for (const CellId c : out.sperner_cells) {
        if (c < 0 || c >= static_cast<CellId>(out.mesh.cell_count()))
            throw ConfigError("trace sperner_set names unknown cell " + std::to_string(c));
        out.mesh.set_sperner(c, true);
    }
    return out;
}

}  // namespace knaster
