#include "knaster/geometry.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace knaster {

Simplex unit_simplex(int d) {
    if (d < 1) throw std::invalid_argument("unit_simplex: dimension must be >= 1");
    Simplex s;
    s.vertices.assign(d + 1, Point(d, 0.0));
    for (int i = 1; i <= d; ++i) s.vertices[i][i - 1] = 1.0;
    return s;
}

Barycentric barycentric(const Point& p, const Simplex& s) {
    const int d = s.dim();
    if (d < 1) throw std::invalid_argument("barycentric: degenerate simplex (no vertices)");
    if (static_cast<int>(p.size()) != d)
        throw std::invalid_argument("barycentric: point/simplex dimension mismatch");
    // Solve sum_{i>=1} lambda_i (v_i - v_0) = p - v_0, then lambda_0 = 1 - sum.
    Eigen::MatrixXd M(d, d);
    Eigen::VectorXd rhs(d);
    for (int r = 0; r < d; ++r) {
        rhs(r) = p[r] - s.vertices[0][r];
        for (int c = 0; c < d; ++c) M(r, c) = s.vertices[c + 1][r] - s.vertices[0][r];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (!lu.isInvertible())
        throw std::invalid_argument("barycentric: degenerate simplex (singular edge-vector system)");
    Eigen::VectorXd w = lu.solve(rhs);
    Barycentric lam(d + 1);
    double sum = 0.0;
    for (int i = 0; i < d; ++i) {
        lam[i + 1] = w(i);
        sum += w(i);
    }
    lam[0] = 1.0 - sum;
    return lam;
}

Barycentric unit_barycentric(const Point& p) {
    Barycentric lam(p.size() + 1);
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        lam[i + 1] = p[i];
        sum += p[i];
    }
    lam[0] = 1.0 - sum;
    return lam;
}

Point cube_to_simplex(const Point& p) {
    const double n1 = norm_1(p);
    if (n1 == 0.0) return Point(p.size(), 0.0);
    const double scale = norm_inf(p) / n1;
    Point out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = scale * p[i];
    return out;
}

Point simplex_to_cube(const Point& p) {
    const double ninf = norm_inf(p);
    if (ninf == 0.0) return Point(p.size(), 0.0);
    const double scale = norm_1(p) / ninf;
    Point out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = scale * p[i];
    return out;
}

double norm_1(const Point& p) {
    double s = 0.0;
    for (double v : p) s += std::abs(v);
    return s;
}

double norm_inf(const Point& p) {
    double m = 0.0;
    for (double v : p) m = std::max(m, std::abs(v));
    return m;
}

double dist(const Point& a, const Point& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        s += diff * diff;
    }
    return std::sqrt(s);
}

double dist_inf(const Point& a, const Point& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace knaster
