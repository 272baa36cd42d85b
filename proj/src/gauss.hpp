#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "common.hpp"

namespace mz {

struct GaussRule {
    Vec nodes;    // on [-1, 1]
    Vec weights;  // sum to 2
};

// Gauss-Legendre rule by Newton iteration on the Legendre polynomial;
// rules are cached per order.
inline const GaussRule& gauss_legendre(int order) {
    if (order < 1) throw ConfigError("gauss_legendre: order must be >= 1");
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;

    GaussRule rule;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    const int n = order;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-based initial guess
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n == 1) {
        rule.nodes[0] = 0.0;
        rule.weights[0] = 2.0;
    }
    auto [pos, inserted] = cache.emplace(order, std::move(rule));
    (void)inserted;
    return pos->second;
}

template <class F>
double gauss_legendre_integrate(double a, double b, int order, F&& f) {
    const GaussRule& r = gauss_legendre(order);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(mid + half * r.nodes[i]);
    return s * half;
}

// Nodes/weights of a composite rule on [a,b] with geometric panels
// accumulating at `a` (ratio in (0,1)); the leftover sliver [a, a+eps] is its
// own panel so singular endpoint weights keep their mass.
inline void graded_panels_toward(double a, double b, int panels, double ratio, int order,
                                 Vec& nodes, Vec& weights) {
    const GaussRule& r = gauss_legendre(order);
    double len = b - a;
    double hi = len;
    for (int k = 0; k < panels; ++k) {
        double lo = (k + 1 == panels) ? 0.0 : hi * ratio;
        double mid = a + 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            nodes.push_back(mid + half * r.nodes[i]);
            weights.push_back(half * r.weights[i]);
        }
        hi = lo;
    }
}

}  // namespace mz
