#pragma once

#include <cmath>
#include <functional>

#include "common.hpp"
#include "graph_domain.hpp"
#include "graph_fn.hpp"

namespace mz::testing {

// Scalar field from lambdas, for oracle-controlled examples.
struct FnField final : ScalarField {
    int d;
    std::function<double(std::span<const double>)> fv;
    std::function<Vec(std::span<const double>)> fg;

    FnField(int dim, std::function<double(std::span<const double>)> v,
            std::function<Vec(std::span<const double>)> g)
        : d(dim), fv(std::move(v)), fg(std::move(g)) {}

    int dim() const override { return d; }
    double value(std::span<const double> pt) const override { return fv(pt); }
    double value_grad(std::span<const double> pt, std::span<double> grad) const override {
        Vec g = fg(pt);
        for (int i = 0; i < d; ++i) grad[i] = g[i];
        return fv(pt);
    }
};

inline AlphaGraphFunction make_zero_g() {
    AlphaGraphFunction g([](std::span<const double>) { return 0.0; },
                         [](std::span<const double>) { return Vec{0.0}; }, 2.0, 1.001,
                         Box::cube(-8.0, 8.0, 1));
    g.certify_c2([](std::span<const double>) { return Vec{0.0}; }, 0.0);
    return g;
}

// g(x) = c x^2 with exact certificates.
inline AlphaGraphFunction make_parabola_g(double c) {
    AlphaGraphFunction g([c](std::span<const double> x) { return c * x[0] * x[0]; },
                         [c](std::span<const double> x) { return Vec{2.0 * c * x[0]}; }, 2.0,
                         std::max(1.001, 2.0 * std::abs(c) * 1.001), Box::cube(-8.0, 8.0, 1));
    g.certify_c2([c](std::span<const double>) { return Vec{2.0 * c}; }, 2.0 * std::abs(c));
    return g;
}

// Dense scan over Gamma' followed by fine local bisection-style refinement;
// independent referee for the distance computation.
inline double brute_force_dist(const GraphDomain& dom, std::span<const double> xi,
                               int grid = 20000) {
    int bd = dom.dim() - 1;
    if (bd != 1) throw ConfigError("brute_force_dist: d = 2 oracle only");
    const Box& d2 = dom.outer_box();
    auto sq = [&](double u) {
        double p[1] = {u};
        double dy = dom.g()(std::span<const double>(p, 1)) - xi[1];
        double dx = u - xi[0];
        return dx * dx + dy * dy;
    };
    double best = 1e300, best_u = d2.lo[0];
    for (int i = 0; i <= grid; ++i) {
        double u = d2.lo[0] + (d2.hi[0] - d2.lo[0]) * i / grid;
        double v = sq(u);
        if (v < best) {
            best = v;
            best_u = u;
        }
    }
    double h = (d2.hi[0] - d2.lo[0]) / grid;
    double a = std::max(d2.lo[0], best_u - h), b = std::min(d2.hi[0], best_u + h);
    for (int it = 0; it < 200; ++it) {
        double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
        if (sq(m1) < sq(m2))
            b = m2;
        else
            a = m1;
    }
    return std::sqrt(sq(0.5 * (a + b)));
}

}  // namespace mz::testing
