#include "knaster/mesh.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace knaster {

std::uint64_t Mesh::pair_key(VertexId a, VertexId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
}

VertexId Mesh::add_vertex(Point pos) {
    VertexRecord rec;
    rec.lam_x = unit_barycentric(pos);
    rec.position = std::move(pos);
    vertices_.push_back(std::move(rec));
    return static_cast<VertexId>(vertices_.size() - 1);
}

EdgeId Mesh::add_edge(VertexId a, VertexId b, long age) {
    if (a > b) std::swap(a, b);
    EdgeRecord rec;
    rec.a = a;
    rec.b = b;
    rec.age = age;
    edges_.push_back(std::move(rec));
    const EdgeId id = static_cast<EdgeId>(edges_.size() - 1);
    alive_edge_of_pair_.emplace(pair_key(a, b), id);
    return id;
}

CellId Mesh::add_cell(std::vector<VertexId> verts, CellId parent) {
    CellRecord rec;
    rec.verts = std::move(verts);
    rec.parent = parent;
    cells_.push_back(std::move(rec));
    return static_cast<CellId>(cells_.size() - 1);
}

Mesh Mesh::init(int d, int initial_refinement) {
    if (d < 1) throw std::invalid_argument("Mesh::init: dimension must be >= 1");
    Mesh m;
    m.d_ = d;
    m.vertices_.reserve(static_cast<std::size_t>(d) + 1);
    m.add_vertex(Point(d, 0.0));                       // origin, id 0
    for (int i = 1; i <= d; ++i) {
        Point p(d, 0.0);
        p[i - 1] = 1.0;
        m.add_vertex(std::move(p));                    // e_i, id i
    }
    // Edges (0, e_i) age 0, then (e_i, e_j) age 1.
    for (VertexId i = 1; i <= d; ++i) m.add_edge(0, i, 0);
    for (VertexId i = 1; i <= d; ++i)
        for (VertexId j = i + 1; j <= d; ++j) m.add_edge(i, j, 1);
    std::vector<VertexId> root(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) root[i] = i;
    const CellId rc = m.add_cell(std::move(root), kNoCell);
    for (auto& e : m.edges_) e.cells.push_back(rc);
    m.root_volume_ = m.cell_volume(rc);
    for (int pass = 0; pass < initial_refinement; ++pass) m.bisect_longest_pass();
    return m;
}

void Mesh::bisect_longest_pass() {
    // One uniform sweep: bisect every edge that is currently of maximal
    // length. The snapshot is stable because new edges are strictly shorter
    // than the longest edge of any cell they appear in.
    double max_len = 0.0;
    for (EdgeId id = 0; id < static_cast<EdgeId>(edges_.size()); ++id)
        if (edges_[id].alive) max_len = std::max(max_len, edge_length(id));
    std::vector<EdgeId> longest;
    for (EdgeId id = 0; id < static_cast<EdgeId>(edges_.size()); ++id)
        if (edges_[id].alive && edge_length(id) >= max_len - 1e-12) longest.push_back(id);
    for (EdgeId id : longest)
        if (edges_[id].alive) bisect_edge(id);
}

void Mesh::increment_ages() {
    for (auto& e : edges_)
        if (e.alive) e.age += 2;
}

std::vector<EdgeId> Mesh::eligible_edges(long threshold_offset) const {
    std::vector<EdgeId> out;
    const long threshold = threshold_offset + age_count_;
    for (EdgeId id = 0; id < static_cast<EdgeId>(edges_.size()); ++id)
        if (edges_[id].alive && edges_[id].age > threshold) out.push_back(id);
    std::sort(out.begin(), out.end(), [this](EdgeId x, EdgeId y) {
        if (edges_[x].age != edges_[y].age) return edges_[x].age > edges_[y].age;
        return x < y;
    });
    return out;
}

std::pair<VertexId, std::vector<CellId>> Mesh::bisect_edge(EdgeId eid) {
    EdgeRecord& e = edges_.at(eid);
    if (!e.alive)
        throw std::invalid_argument("bisect_edge: edge " + std::to_string(eid) + " is dead");
    const VertexId va = e.a, vb = e.b;   // va < vb

    Point mid(d_);
    for (int k = 0; k < d_; ++k)
        mid[k] = 0.5 * (vertices_[va].position[k] + vertices_[vb].position[k]);
    const VertexId vm = add_vertex(std::move(mid));

    e.alive = false;
    alive_edge_of_pair_.erase(pair_key(va, vb));
    const std::vector<CellId> parents = e.cells;   // ascending by construction

    add_edge(va, vm, 0);
    add_edge(vm, vb, 0);

    std::vector<CellId> new_cells;
    for (const CellId pc : parents) {
        cells_.at(pc).alive = false;
        // Detach the parent from the incidence lists of its surviving edges.
        // (Copy the vertex list: add_cell below may reallocate the cell store.)
        const std::vector<VertexId> pv = cells_[pc].verts;
        for (std::size_t i = 0; i < pv.size(); ++i) {
            for (std::size_t j = i + 1; j < pv.size(); ++j) {
                const auto it = alive_edge_of_pair_.find(pair_key(pv[i], pv[j]));
                if (it == alive_edge_of_pair_.end()) continue;   // the split edge itself
                auto& cl = edges_[it->second].cells;
                cl.erase(std::remove(cl.begin(), cl.end(), pc), cl.end());
            }
        }
        // Two children: the midpoint replaces one endpoint in each. The child
        // keeping the smaller endpoint id is created first.
        for (int half = 0; half < 2; ++half) {
            const VertexId replaced = (half == 0) ? vb : va;
            std::vector<VertexId> cv = pv;
            for (auto& v : cv)
                if (v == replaced) v = vm;
            const CellId cc = add_cell(std::move(cv), pc);
            cells_[pc].children[half] = cc;
            new_cells.push_back(cc);
            const auto& verts = cells_[cc].verts;
            for (std::size_t i = 0; i < verts.size(); ++i) {
                for (std::size_t j = i + 1; j < verts.size(); ++j) {
                    const auto it = alive_edge_of_pair_.find(pair_key(verts[i], verts[j]));
                    EdgeId ce;
                    if (it != alive_edge_of_pair_.end()) {
                        ce = it->second;
                    } else {
                        ce = add_edge(verts[i], verts[j], 1);   // new non-half edge
                    }
                    edges_[ce].cells.push_back(cc);
                }
            }
        }
    }
    return {vm, new_cells};
}

double Mesh::edge_length(EdgeId e) const {
    const EdgeRecord& rec = edges_.at(e);
    return dist(vertices_[rec.a].position, vertices_[rec.b].position);
}

double Mesh::max_edge_length() const {
    double m = 0.0;
    for (EdgeId id = 0; id < static_cast<EdgeId>(edges_.size()); ++id)
        if (edges_[id].alive) m = std::max(m, edge_length(id));
    return m;
}

double Mesh::cell_diameter(CellId c) const {
    const auto& verts = cells_.at(c).verts;
    double m = 0.0;
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = i + 1; j < verts.size(); ++j)
            m = std::max(m, dist(vertices_[verts[i]].position, vertices_[verts[j]].position));
    return m;
}

Point Mesh::cell_barycenter(CellId c) const {
    const auto& verts = cells_.at(c).verts;
    Point out(d_, 0.0);
    for (const VertexId v : verts)
        for (int k = 0; k < d_; ++k) out[k] += vertices_[v].position[k];
    for (int k = 0; k < d_; ++k) out[k] /= static_cast<double>(verts.size());
    return out;
}

double Mesh::cell_volume(CellId c) const {
    const auto& verts = cells_.at(c).verts;
    Eigen::MatrixXd M(d_, d_);
    for (int col = 0; col < d_; ++col)
        for (int row = 0; row < d_; ++row)
            M(row, col) = vertices_[verts[col + 1]].position[row] - vertices_[verts[0]].position[row];
    double fact = 1.0;
    for (int k = 2; k <= d_; ++k) fact *= k;
    return std::abs(M.determinant()) / fact;
}

EdgeId Mesh::find_edge(VertexId a, VertexId b) const {
    const auto it = alive_edge_of_pair_.find(pair_key(a, b));
    return it == alive_edge_of_pair_.end() ? EdgeId{-1} : it->second;
}

std::vector<CellId> Mesh::alive_cells() const {
    std::vector<CellId> out;
    for (CellId id = 0; id < static_cast<CellId>(cells_.size()); ++id)
        if (cells_[id].alive) out.push_back(id);
    return out;
}

std::vector<CellId> Mesh::alive_sperner_cells() const {
    std::vector<CellId> out;
    for (CellId id = 0; id < static_cast<CellId>(cells_.size()); ++id)
        if (cells_[id].alive && cells_[id].sperner) out.push_back(id);
    return out;
}

}  // namespace knaster
