#include "knaster/labeling.hpp"

#include "knaster/errors.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

namespace knaster {

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::NotCloser: return "not-closer";
        case Strategy::MaxGain: return "max-gain";
        case Strategy::FirstIndexReduced: return "first-index";
    }
    return "?";
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "not-closer") return Strategy::NotCloser;
    if (name == "max-gain") return Strategy::MaxGain;
    if (name == "first-index") return Strategy::FirstIndexReduced;
    throw ConfigError("unknown labeling strategy '" + name +
                      "' (expected not-closer, max-gain or first-index)");
}

std::vector<int> compute_labels(const Barycentric& lam_x, const Barycentric& lam_fx,
                                const LabelingStrategy& strategy) {
    if (lam_x.size() != lam_fx.size())
        throw std::invalid_argument("compute_labels: barycentric dimension mismatch");
    const int n = static_cast<int>(lam_x.size());
    const double tau = strategy.tau;
    std::vector<int> out;

    switch (strategy.kind) {
        case Strategy::NotCloser:
            for (int i = 0; i < n; ++i)
                if (lam_fx[i] <= lam_x[i] + tau) out.push_back(i);
            break;

        case Strategy::MaxGain: {
            double best = -std::numeric_limits<double>::infinity();
            for (int i = 0; i < n; ++i) best = std::max(best, lam_x[i] - lam_fx[i]);
            for (int i = 0; i < n; ++i)
                if (lam_x[i] - lam_fx[i] >= best - tau) out.push_back(i);
            break;
        }

        case Strategy::FirstIndexReduced: {
            // Start from the NotCloser set, discard memberships with
            // lambda_i(x) = 0, keep the smallest surviving index. If the
            // reduction empties the set (float guard; cannot happen in exact
            // arithmetic), fall back to the smallest NotCloser index.
            int first_any = -1, first_reduced = -1;
            for (int i = 0; i < n; ++i) {
                if (lam_fx[i] > lam_x[i] + tau) continue;
                if (first_any < 0) first_any = i;
                if (first_reduced < 0 && lam_x[i] > tau) first_reduced = i;
            }
            if (first_reduced >= 0)
                out.push_back(first_reduced);
            else if (first_any >= 0)
                out.push_back(first_any);
            break;
        }
    }
    return out;
}

bool is_sperner(const std::vector<std::vector<int>>& cell_label_sets) {
    const int n = static_cast<int>(cell_label_sets.size());
    std::vector<int> owner(n, -1);   // owner[label] = corner holding it
    std::function<bool(int, std::vector<char>&)> augment = [&](int corner,
                                                               std::vector<char>& seen) {
        for (const int lab : cell_label_sets[corner]) {
            if (lab < 0 || lab >= n || seen[lab]) continue;
            seen[lab] = 1;
            if (owner[lab] < 0 || augment(owner[lab], seen)) {
                owner[lab] = corner;
                return true;
            }
        }
        return false;
    };
    for (int c = 0; c < n; ++c) {
        std::vector<char> seen(n, 0);
        if (!augment(c, seen)) return false;
    }
    return true;
}

bool face_cover_check(const Mesh& mesh, double tau) {
    std::vector<char> checked(mesh.vertex_count(), 0);
    for (const CellId c : mesh.alive_cells()) {
        for (const VertexId v : mesh.cell(c).verts) {
            if (checked[v]) continue;
            checked[v] = 1;
            const VertexRecord& rec = mesh.vertex(v);
            if (!rec.evaluated) continue;
            bool covered = false;
            for (const int lab : rec.labels)
                if (rec.lam_x[lab] > tau) {
                    covered = true;
                    break;
                }
            if (!covered) return false;
        }
    }
    return true;
}

}  // namespace knaster
