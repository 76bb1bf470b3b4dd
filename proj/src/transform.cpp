#include "knaster/transform.hpp"

#include "knaster/errors.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace knaster {

namespace {

std::string fmt_point(const Point& p) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
    os << ")";
    return os.str();
}

void check_scales(const std::vector<double>& c, int d) {
    if (static_cast<int>(c.size()) != d)
        throw ConfigError("zero-search scales c need d components");
    for (const double v : c)
        if (!(v > 0.0)) throw ConfigError("zero-search scales c must be positive");
}

Point apply_gauge(const ZeroProblem& zp, const Point& x) {
    const Point g = zp.G(x);
    return zp.U ? zp.U(g) : square_gauge(g);
}

Point shrink(const Point& x, const Point& u, const std::vector<double>& c, double damping) {
    Point y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] * (1.0 - damping * u[i] / c[i]);
    return y;
}

}  // namespace

Point square_gauge(const Point& g) {
    Point u(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) u[i] = g[i] * g[i];
    return u;
}

std::vector<double> estimate_c(const ZeroProblem& zp, int samples, std::uint32_t seed) {
    if (zp.d < 1) throw ConfigError("estimate_c: dimension must be >= 1");
    if (samples < 1) throw ConfigError("estimate_c: need at least one sample");
    const int d = zp.d;
    std::vector<double> cmax(d, 0.0);
    const auto take = [&](const Point& x) {
        const Point u = apply_gauge(zp, x);
        for (int i = 0; i < d; ++i) cmax[i] = std::max(cmax[i], u[i]);
    };
    // Corners and edge midpoints first: for convex gauges (the default
    // square of an affine G) the true maximum sits on a corner, so the
    // estimate is exact there before inflation.
    const Simplex s = unit_simplex(d);
    for (const auto& v : s.vertices) take(v);
    for (int i = 0; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j) {
            Point m(d);
            for (int k = 0; k < d; ++k) m[k] = 0.5 * (s.vertices[i][k] + s.vertices[j][k]);
            take(m);
        }
    // Seeded interior samples, uniform on the simplex via normalized
    // exponential spacings. mt19937 output is normalized by hand so the
    // stream does not depend on library distribution internals.
    std::mt19937 rng(seed);
    const auto unit = [&rng]() {
        return (static_cast<double>(rng()) + 0.5) * (1.0 / 4294967296.0);
    };
    Point x(d);
    for (int n = 0; n < samples; ++n) {
        double sum = 0.0;
        std::vector<double> e(d + 1);
        for (int i = 0; i <= d; ++i) {
            e[i] = -std::log(unit());
            sum += e[i];
        }
        for (int i = 0; i < d; ++i) x[i] = e[i + 1] / sum;
        take(x);
    }
    for (int i = 0; i < d; ++i) {
        if (!(cmax[i] > 0.0))
            throw ConfigError("estimate_c: component " + std::to_string(i) +
                              " of the gauge is identically zero on all samples");
        cmax[i] *= 1.05;
    }
    return cmax;
}

Problem to_fixed_point(const ZeroProblem& zp) {
    if (zp.d < 1) throw ConfigError("to_fixed_point: dimension must be >= 1");
    check_scales(zp.c, zp.d);
    Problem p;
    p.d = zp.d;
    p.name = zp.name.empty() ? "zero-search" : "zero-search:" + zp.name;
    p.transformed = true;
    const ZeroProblem cap = zp;   // own a copy; callers may discard theirs
    p.F = [cap](const Point& x) { return shrink(x, apply_gauge(cap, x), cap.c, cap.damping); };
    p.gauge = [cap](const Point& x) { return apply_gauge(cap, x); };
    return p;
}

int rescale_and_relabel(Mesh& mesh, const ZeroProblem& zp, const std::vector<double>& new_c,
                        const LabelingStrategy& strategy) {
    check_scales(new_c, mesh.dim());
    int changed = 0;
    for (VertexId v = 0; v < static_cast<VertexId>(mesh.vertex_count()); ++v) {
        VertexRecord& rec = mesh.vertex(v);
        if (!rec.evaluated) continue;
        if (rec.gauge.empty())
            throw std::logic_error("rescale_and_relabel: vertex " + std::to_string(v) +
                                   " has no cached gauge values");
        rec.image = shrink(rec.position, rec.gauge, new_c, zp.damping);
        rec.lam_fx = unit_barycentric(rec.image);
        std::vector<int> labels = compute_labels(rec.lam_x, rec.lam_fx, strategy);
        if (labels != rec.labels) {
            rec.labels = std::move(labels);
            ++changed;
        }
    }
    for (const CellId c : mesh.alive_cells()) {
        std::vector<std::vector<int>> sets;
        sets.reserve(mesh.cell(c).verts.size());
        for (const VertexId v : mesh.cell(c).verts) sets.push_back(mesh.vertex(v).labels);
        mesh.set_sperner(c, is_sperner(sets));
    }
    return changed;
}

Problem wrap_cube(int d, const std::string& name, std::function<Point(const Point&)> f_cube) {
    if (d < 1) throw ConfigError("wrap_cube: dimension must be >= 1");
    Problem p;
    p.d = d;
    p.name = name;
    p.F = [f = std::move(f_cube), d](const Point& x) {
        const Point y = f(simplex_to_cube(x));
        if (static_cast<int>(y.size()) != d)
            throw DomainViolation("cube map returned a point of wrong dimension");
        for (const double v : y)
            if (v < -1e-9 || v > 1.0 + 1e-9)
                throw DomainViolation("cube map left [0,1]^d at image " + fmt_point(y));
        return cube_to_simplex(y);
    };
    return p;
}

}  // namespace knaster
