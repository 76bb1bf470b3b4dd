#ifndef KNASTER_MESH_HPP
#define KNASTER_MESH_HPP

#include "knaster/geometry.hpp"

#include <array>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace knaster {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using CellId = std::int32_t;
inline constexpr CellId kNoCell = -1;

struct VertexRecord {
    Point position;            // reference (unit-simplex) coordinates
    Barycentric lam_x;         // barycentric of position, set at creation
    Point image;               // F(position), set on evaluation
    Barycentric lam_fx;
    std::vector<int> labels;   // sorted C_i membership indices
    Point gauge;               // cached U(G(x)) for transformed problems, else empty
    bool evaluated = false;
};

struct EdgeRecord {
    VertexId a = -1, b = -1;   // endpoints, a < b
    long age = 0;
    bool alive = true;
    std::vector<CellId> cells; // incident alive cells while alive; last state kept after death
};

struct CellRecord {
    std::vector<VertexId> verts;  // d+1 vertex ids
    bool alive = true;
    CellId parent = kNoCell;
    std::array<CellId, 2> children{kNoCell, kNoCell};
    bool sperner = false;
};

// Conforming triangulation of the unit d-simplex under edge bisection.
// Records are tombstoned, never deleted; identifiers are never reused.
class Mesh {
public:
    // One root cell; edges (0,e_i) start at age 0, (e_i,e_j) at age 1. Each
    // initial-refinement pass bisects every currently longest edge once.
    static Mesh init(int d, int initial_refinement = 0);

    int dim() const { return d_; }
    long age_count() const { return age_count_; }
    void set_age_count(long v) { age_count_ = v; }

    // Every alive edge ages by exactly 2.
    void increment_ages();

    // Alive edges with age > threshold_offset + age_count, sorted by age
    // descending, ties by ascending edge id.
    std::vector<EdgeId> eligible_edges(long threshold_offset) const;

    // Insert the midpoint of an alive edge and split every alive incident
    // cell in two. The two half-edges get age 0, all other new edges age 1.
    // Returns the midpoint vertex and the new cells in creation order.
    // Throws std::invalid_argument if the edge is dead.
    std::pair<VertexId, std::vector<CellId>> bisect_edge(EdgeId e);

    double max_edge_length() const;          // over alive edges
    double edge_length(EdgeId e) const;
    double cell_diameter(CellId c) const;    // max pairwise vertex distance
    Point cell_barycenter(CellId c) const;
    double cell_volume(CellId c) const;
    double root_volume() const { return root_volume_; }

    // Alive edge between two vertices, or -1.
    EdgeId find_edge(VertexId a, VertexId b) const;

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t cell_count() const { return cells_.size(); }

    const VertexRecord& vertex(VertexId v) const { return vertices_.at(v); }
    VertexRecord& vertex(VertexId v) { return vertices_.at(v); }
    const EdgeRecord& edge(EdgeId e) const { return edges_.at(e); }
    const CellRecord& cell(CellId c) const { return cells_.at(c); }

    void set_sperner(CellId c, bool flag) { cells_.at(c).sperner = flag; }

    std::vector<CellId> alive_cells() const;
    std::vector<CellId> alive_sperner_cells() const;

private:
    static std::uint64_t pair_key(VertexId a, VertexId b);
    VertexId add_vertex(Point pos);
    EdgeId add_edge(VertexId a, VertexId b, long age);
    CellId add_cell(std::vector<VertexId> verts, CellId parent);
    void bisect_longest_pass();

    int d_ = 0;
    long age_count_ = 0;
    double root_volume_ = 0.0;
    std::vector<VertexRecord> vertices_;
    std::vector<EdgeRecord> edges_;
    std::vector<CellRecord> cells_;
    std::unordered_map<std::uint64_t, EdgeId> alive_edge_of_pair_;
};

}  // namespace knaster

#endif
