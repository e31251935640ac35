#include "anisofem/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "anisofem/errors.hpp"

namespace anisofem {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 1) {
        throw ConfigError("gauss_legendre: need at least one point");
    }
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    // Newton iteration on P_n over [-1, 1], then map to [0, 1].
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) {
                break;
            }
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        nodes[lo] = 0.5 * (1.0 - z);
        nodes[hi] = 0.5 * (1.0 + z);
        weights[lo] = 0.5 * w;
        weights[hi] = 0.5 * w;
    }
}

QuadratureRule tensor_gauss_rule(int points_per_direction) {
    std::vector<double> x;
    std::vector<double> w;
    gauss_legendre(points_per_direction, x, w);
    QuadratureRule rule;
    for (std::size_t j = 0; j < x.size(); ++j) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            rule.points.push_back({x[i], x[j]});
            rule.weights.push_back(w[i] * w[j]);
        }
    }
    return rule;
}

QuadratureRule triangle_degree4_rule() {
    constexpr double a = 0.44594849091596488632;
    constexpr double wa = 0.22338158967801146570;
    constexpr double b = 0.09157621350977074346;
    constexpr double wb = 0.10995174365532186764;
    QuadratureRule rule;
    rule.points = {{a, a}, {1.0 - 2.0 * a, a}, {a, 1.0 - 2.0 * a},
                   {b, b}, {1.0 - 2.0 * b, b}, {b, 1.0 - 2.0 * b}};
    rule.weights = {0.5 * wa, 0.5 * wa, 0.5 * wa, 0.5 * wb, 0.5 * wb, 0.5 * wb};
    return rule;
}

QuadratureRule triangle_collapsed_rule(int points_per_direction) {
    std::vector<double> x, w;
    gauss_legendre(points_per_direction, x, w);
    QuadratureRule rule;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) {
            rule.points.push_back({x[i], x[j] * (1.0 - x[i])});
            rule.weights.push_back(w[i] * w[j] * (1.0 - x[i]));
        }
    }
    return rule;
}

QuadratureRule assembly_rule(ElementKind kind) {
    return kind == ElementKind::Quad ? tensor_gauss_rule(4) : triangle_degree4_rule();
}

QuadratureRule source_rule(ElementKind kind) {
    return kind == ElementKind::Quad ? tensor_gauss_rule(10) : triangle_collapsed_rule(10);
}

QuadratureRule error_rule(ElementKind kind) {
    return kind == ElementKind::Quad ? tensor_gauss_rule(6) : triangle_degree4_rule();
}

}  // namespace anisofem
