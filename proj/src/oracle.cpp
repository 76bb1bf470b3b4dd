#include "knaster/oracle.hpp"

#include "knaster/errors.hpp"
#include "knaster/geometry.hpp"
#include "knaster/labeling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace knaster {

namespace {

using GridKey = std::vector<int>;   // k_1..k_d, homogeneous k_0 = res - sum

void enumerate(int d, int res, GridKey& k, int pos, int remaining,
               const std::function<void(const GridKey&)>& fn) {
    if (pos == d) {
        fn(k);
        return;
    }
    for (int v = 0; v <= remaining; ++v) {
        k[pos] = v;
        enumerate(d, res, k, pos + 1, remaining - v, fn);
    }
}

Point key_to_point(const GridKey& k, int res) {
    Point x(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) x[i] = static_cast<double>(k[i]) / res;
    return x;
}

}  // namespace

GridReport grid_fixed_points(const Problem& problem, int resolution) {
    if (resolution < 2) throw ConfigError("grid resolution must be >= 2");
    const int d = problem.d;
    GridReport report;
    report.resolution = resolution;

    std::map<GridKey, double> residuals;
    GridKey k(d, 0);
    enumerate(d, resolution, k, 0, resolution, [&](const GridKey& key) {
        const Point x = key_to_point(key, resolution);
        const Point fx = problem.F(x);
        double r = 0.0;
        for (int i = 0; i < d; ++i) r = std::max(r, std::abs(fx[i] - x[i]));
        residuals.emplace(key, r);
    });

    report.best_residual = std::numeric_limits<double>::infinity();
    for (const auto& [key, r] : residuals) report.best_residual = std::min(report.best_residual, r);

    // A lattice neighbour moves one unit between two homogeneous coordinates.
    const double cutoff = 2.0 / resolution;
    for (const auto& [key, r] : residuals) {
        if (r >= cutoff) continue;
        int sum = 0;
        for (const int v : key) sum += v;
        const int k0 = resolution - sum;
        bool local_min = true;
        GridKey nb = key;
        auto check = [&](const GridKey& n) {
            const auto it = residuals.find(n);
            if (it != residuals.end() && it->second < r) local_min = false;
        };
        for (int i = 0; i < d && local_min; ++i) {
            if (k0 >= 1) {             // k_0 -> k_i
                nb[i] += 1;
                check(nb);
                nb[i] -= 1;
            }
            if (key[i] >= 1) {         // k_i -> k_0
                nb[i] -= 1;
                check(nb);
                nb[i] += 1;
            }
            for (int j = 0; j < d && local_min; ++j) {
                if (j == i || key[i] < 1) continue;   // k_i -> k_j
                nb[i] -= 1;
                nb[j] += 1;
                check(nb);
                nb[i] += 1;
                nb[j] -= 1;
            }
        }
        if (local_min) report.minima.push_back({key_to_point(key, resolution), r});
    }
    std::sort(report.minima.begin(), report.minima.end(),
              [](const GridMinimum& a, const GridMinimum& b) { return a.residual < b.residual; });
    return report;
}

SpernerParityReport sperner_parity(const Mesh& mesh, double tau) {
    if (!face_cover_check(mesh, tau))
        throw std::logic_error("sperner_parity: some vertex has no label with positive coordinate");

    SpernerParityReport report;
    const int d = mesh.dim();
    std::vector<std::vector<int>> sets;
    std::vector<char> seen(static_cast<std::size_t>(d) + 1);
    for (const CellId c : mesh.alive_cells()) {
        const CellRecord& cell = mesh.cell(c);
        sets.clear();
        std::fill(seen.begin(), seen.end(), 0);
        bool full = true;
        for (const VertexId v : cell.verts) {
            const VertexRecord& rec = mesh.vertex(v);
            if (!rec.evaluated || rec.labels.empty())
                throw std::logic_error("sperner_parity: unevaluated vertex in an alive cell");
            sets.push_back(rec.labels);
            int pick = -1;
            for (const int lab : rec.labels)
                if (rec.lam_x[lab] > tau && (pick < 0 || lab < pick)) pick = lab;
            if (pick < 0)
                for (const int lab : rec.labels)
                    if (pick < 0 || lab < pick) pick = lab;
            if (seen[pick]) full = false;
            seen[pick] = 1;
        }
        if (full) ++report.canonical_count;
        if (is_sperner(sets)) ++report.sdr_count;
    }
    report.parity_odd = (report.canonical_count % 2) == 1;
    return report;
}

EdgeHalvingReport edge_halving_check(int d, int chain_length) {
    if (d < 1) throw ConfigError("edge_halving_check requires d >= 1");
    if (chain_length < 1) throw ConfigError("edge_halving_check requires chain_length >= 1");

    EdgeHalvingReport report;
    report.chain_length = chain_length;
    report.ok = true;

    Mesh mesh = Mesh::init(d, 0);
    CellId tracked = 0;
    const VertexId corner = 1;   // e_1
    const double base = mesh.cell_diameter(tracked);

    for (int n = 1; n <= chain_length; ++n) {
        const std::vector<VertexId> verts = mesh.cell(tracked).verts;
        double max_len = 0.0;
        for (std::size_t i = 0; i < verts.size(); ++i)
            for (std::size_t j = i + 1; j < verts.size(); ++j)
                max_len = std::max(max_len,
                                   dist(mesh.vertex(verts[i]).position, mesh.vertex(verts[j]).position));

        EdgeId chosen = -1;
        bool chosen_corner = false;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            for (std::size_t j = i + 1; j < verts.size(); ++j) {
                if (dist(mesh.vertex(verts[i]).position, mesh.vertex(verts[j]).position) <
                    max_len - 1e-12)
                    continue;
                const EdgeId e = mesh.find_edge(verts[i], verts[j]);
                if (e < 0) continue;
                const bool corner_incident = verts[i] == corner || verts[j] == corner;
                if (chosen < 0 || (corner_incident && !chosen_corner) ||
                    (corner_incident == chosen_corner && e < chosen)) {
                    chosen = e;
                    chosen_corner = corner_incident;
                }
            }
        }
        if (chosen < 0) {
            report.ok = false;
            report.detail = "step " + std::to_string(n) + ": tracked cell has no alive edge";
            break;
        }

        mesh.bisect_edge(chosen);
        CellId next = -1;
        for (const CellId ch : mesh.cell(tracked).children) {
            if (ch == kNoCell) continue;
            const auto& cv = mesh.cell(ch).verts;
            if (std::find(cv.begin(), cv.end(), corner) != cv.end()) {
                next = ch;
                break;
            }
        }
        if (next < 0) {
            report.ok = false;
            report.detail = "step " + std::to_string(n) + ": no child contains the corner";
            break;
        }
        tracked = next;

        const double len = mesh.cell_diameter(tracked);
        report.lengths.push_back(len);
        if (n % d == 0) {
            const double expected = base * std::ldexp(1.0, -(n / d));
            if (std::abs(len - expected) > 1e-12) {
                report.ok = false;
                std::ostringstream os;
                os << "after " << n << " bisections max edge is " << len << ", expected "
                   << expected;
                report.detail = os.str();
                break;
            }
        }
    }
    return report;
}

}  // namespace knaster
