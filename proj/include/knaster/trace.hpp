#ifndef KNASTER_TRACE_HPP
#define KNASTER_TRACE_HPP

#include "knaster/mesh.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace knaster {

// Ordered run log, one JSON object per event, schema version "v": 1.
// Events: run_start, vertex_evaluated, edge_bisected, sperner_set,
// age_count_changed. Replaying a trace reconstructs the final mesh exactly;
// no event carries wall-clock data, so traces are byte-reproducible.
class SolveTrace {
public:
    void emit(nlohmann::json event);
    const std::vector<nlohmann::json>& events() const { return events_; }
    bool empty() const { return events_.empty(); }

    void save(std::ostream& os) const;
    void save_file(const std::string& path) const;     // IoError on failure
    static SolveTrace load_file(const std::string& path);

    // Event builders (all include "v": 1).
    static nlohmann::json run_start(nlohmann::json header);
    static nlohmann::json vertex_evaluated(VertexId id, const Point& position,
                                           const Point& image, const std::vector<int>& labels);
    static nlohmann::json edge_bisected(EdgeId edge, VertexId a, VertexId b, VertexId new_vertex);
    static nlohmann::json sperner_set(int step, const std::vector<CellId>& cells);
    static nlohmann::json age_count_changed(long value);

private:
    std::vector<nlohmann::json> events_;
};

struct ReplayResult {
    Mesh mesh;
    nlohmann::json header;
    int last_step = -1;                 // highest sperner_set step applied
    std::vector<int> steps;             // all sperner_set steps in the trace
    std::vector<CellId> sperner_cells;  // cells of the last applied sperner_set
};

// Rebuild the mesh from a trace without evaluating F. If up_to_step >= 0,
// stop right after the sperner_set event of that step. Throws ConfigError
// on malformed traces or an unknown step (the message lists valid steps).
ReplayResult replay_trace(const SolveTrace& trace, int up_to_step = -1);

}  // namespace knaster

#endif
