#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <vector>

#include "burgers/errors.hpp"

namespace burgers {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre nodes/weights via Newton iteration on P_n.
inline const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // evaluate P_n and P_n' by the three-term recurrence
            double p0 = 1.0, p1 = x;
            for (int m = 2; m <= n; ++m) {
                const double p2 = ((2 * m - 1) * x * p1 - (m - 1) * p0) / m;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(n, std::move(rule)).first->second;
}

/// Composite Gauss-Legendre with `panels` equal panels of `order` points each.
inline double integrate_panels(const std::function<double(double)>& fn, double a, double b,
                               int panels, int order = 16) {
    const GaussRule& rule = gauss_legendre(order);
    const double w = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * w;
        const double mid = lo + 0.5 * w;
        double acc = 0.0;
        for (int q = 0; q < order; ++q) acc += rule.weights[q] * fn(mid + 0.5 * w * rule.nodes[q]);
        total += acc * 0.5 * w;
    }
    return total;
}

/// Panel-doubling refinement until successive estimates differ by less than
/// `rel_tol` relative (with a unit floor for near-zero integrals).
inline double integrate_adaptive(const std::function<double(double)>& fn, double a, double b,
                                 double rel_tol = 1e-10, int max_doublings = 12, int order = 16) {
    if (a == b) return 0.0;
    int panels = 1;
    double last = integrate_panels(fn, a, b, panels, order);
    for (int r = 0; r < max_doublings; ++r) {
        panels *= 2;
        const double next = integrate_panels(fn, a, b, panels, order);
        if (std::abs(next - last) <= rel_tol * std::max(1.0, std::abs(next))) return next;
        last = next;
    }
    throw QuadratureNonConvergent("panel refinement did not converge to requested tolerance");
}

}  // namespace burgers
