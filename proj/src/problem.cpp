#include "knaster/problem.hpp"

#include "knaster/errors.hpp"

#include <cmath>
#include <string>

namespace knaster {

std::vector<std::string> builtin_names() {
    return {"half", "swap", "contraction", "contraction-eps"};
}

std::vector<double> default_epsilon(int d) {
    // Small, asymmetric, pairwise distinct; keeps F inside the simplex for
    // the dimensions of interest. Entries past the fourth repeat 0.003.
    static const double base[4] = {0.011, 0.007, 0.005, 0.003};
    std::vector<double> eps(d);
    for (int i = 0; i < d; ++i) eps[i] = (i < 4) ? base[i] : 0.003;
    return eps;
}

Problem builtin(const std::string& name, int d, const std::vector<double>& eps_arg) {
    if (d < 1) throw ConfigError("builtin '" + name + "': dimension must be >= 1");
    Problem p;
    p.d = d;
    p.name = name;

    if (name == "half") {
        p.F = [](const Point& x) {
            Point y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = 0.5 * x[i];
            return y;
        };
        p.known_fixed_points = {Point(d, 0.0)};
        return p;
    }

    if (name == "swap") {
        if (d != 2) throw ConfigError("builtin 'swap' is defined for d = 2 only");
        p.F = [](const Point& x) { return Point{x[1], x[0]}; };
        p.known_fixed_points = {{0.0, 0.0}, {0.25, 0.25}, {0.5, 0.5}};
        p.fixed_point_note = "every point of the diagonal x_1 = x_2";
        return p;
    }

    if (name == "contraction" || name == "contraction-eps") {
        std::vector<double> eps(d, 0.0);
        if (name == "contraction-eps") {
            if (d < 2)
                throw ConfigError("builtin 'contraction-eps' needs d >= 2 "
                                  "(the disturbance leaves the simplex at d = 1)");
            if (eps_arg.empty())
                eps = default_epsilon(d);
            else if (eps_arg.size() == 1)
                eps.assign(d, eps_arg[0]);
            else if (static_cast<int>(eps_arg.size()) == d)
                eps = eps_arg;
            else
                throw ConfigError("epsilon needs 1 or d components");
        } else if (!eps_arg.empty()) {
            throw ConfigError("epsilon only applies to 'contraction-eps'");
        }
        const double s = 1.0 / (2.0 * d);
        p.F = [s, eps](const Point& x) {
            Point y(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) y[i] = s * x[i] + s + eps[i];
            return y;
        };
        // Fixed point of x = x/(2d) + 1/(2d) + eps: x_i = (1 + 2d eps_i) / (2d - 1).
        Point fp(d);
        for (int i = 0; i < d; ++i) fp[i] = (1.0 + 2.0 * d * eps[i]) / (2.0 * d - 1.0);
        p.known_fixed_points = {fp};
        return p;
    }

    throw ConfigError("unknown builtin problem '" + name + "'");
}

Problem from_affine(const AffineSpec& spec) {
    const int d = spec.d;
    if (d < 1) throw ConfigError("affine spec: dimension must be >= 1");
    if (static_cast<int>(spec.A.size()) != d || static_cast<int>(spec.b.size()) != d)
        throw ConfigError("affine spec: A must be d x d and b of length d");
    for (const auto& row : spec.A)
        if (static_cast<int>(row.size()) != d)
            throw ConfigError("affine spec: A must be d x d and b of length d");
    for (const auto& row : spec.A)
        for (const double v : row)
            if (!std::isfinite(v)) throw ConfigError("affine spec: A has a non-finite entry");
    for (const double v : spec.b)
        if (!std::isfinite(v)) throw ConfigError("affine spec: b has a non-finite entry");

    Problem p;
    p.d = d;
    p.name = "affine";
    p.F = [A = spec.A, b = spec.b, d](const Point& x) {
        Point y(d);
        for (int i = 0; i < d; ++i) {
            double s = b[i];
            for (int j = 0; j < d; ++j) s += A[i][j] * x[j];
            y[i] = s;
        }
        return y;
    };
    return p;
}

}  // namespace knaster
