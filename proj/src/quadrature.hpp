#pragma once

#include <functional>

#include <json.hpp>

#include "gauss.hpp"
#include "graph_domain.hpp"

namespace mz {

// Engine controls. Region integrals iterate the flattening
// F(x,z) = f(x, g(x)-z): tensor Gauss-Legendre over the base box, and
// geometrically graded panels in z accumulating at z = 0. Refinement doubles
// both orders until rel_tol or max_levels.
struct QuadratureSpec {
    int outer_order = 32;   // points per base-box axis (per panel when outer_panels > 0)
    int inner_panels = 40;  // geometric z-panels toward z = 0
    int panel_order = 8;
    double rel_tol = 1e-8;
    double grading_ratio = 0.25;
    int max_levels = 4;

    // Optional grading of the outer axes toward a concentration point
    // (sharpness integrands pile up near the apex x = 0).
    int outer_panels = 0;  // 0 disables; else panels per side of outer_center
    double outer_center = 0.0;
    double outer_ratio = 0.5;

    // Degree hint: f(x, g(x)-z) is a z-polynomial of this degree, so per-panel
    // orders are raised toward exactness of |f|^p in z and fewer panels are
    // needed. 0 = no hint.
    int poly_degree = 0;

    // The model boundary functions have their gradient kink at x = 0; a panel
    // split there turns an interior kink into panel endpoints, where
    // Gauss-Legendre converges fast.
    bool split_outer_at_zero = true;
};

struct NormResult {
    double value = 0.0;
    double err_est = 0.0;  // |last - previous| refinement difference
    int levels_used = 0;
    bool warning = false;  // err_est still above tol at max_levels

    nlohmann::ordered_json to_json() const {
        return {{"value", value}, {"err_est", err_est}, {"levels_used", levels_used}, {"warning", warning}};
    }
};

struct Weight {
    enum class Kind { None, DeltaNGamma, InvSqrt } kind = Kind::None;
    int n = 1;
    double gamma = 0.0;
    double eps = 0.0;

    static Weight none() { return {}; }
    // w(z) = (z + 1/n^2)^{gamma * p}: the norm computed with it equals
    // || delta_n^gamma f ||_p.
    static Weight delta_n_gamma(int n, double gamma) {
        Weight w;
        w.kind = Kind::DeltaNGamma;
        w.n = n;
        w.gamma = gamma;
        return w;
    }
    // w(z) = (eps + z)^{-1/2}
    static Weight inv_sqrt(double eps) {
        Weight w;
        w.kind = Kind::InvSqrt;
        w.eps = eps;
        return w;
    }

    double eval(double z, double p) const {
        switch (kind) {
            case Kind::None:
                return 1.0;
            case Kind::DeltaNGamma:
                return std::pow(z + 1.0 / (double(n) * double(n)), gamma * p);
            case Kind::InvSqrt:
                return 1.0 / std::sqrt(eps + z);
        }
        return 1.0;
    }
};

enum class Region { G, Gstar };

namespace detail {

inline void append_gl(double lo, double hi, int order, Vec& nodes, Vec& weights) {
    const GaussRule& r = gauss_legendre(order);
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        nodes.push_back(mid + half * r.nodes[i]);
        weights.push_back(half * r.weights[i]);
    }
}

inline void outer_axis_rule(double lo, double hi, const QuadratureSpec& spec, int order,
                            Vec& nodes, Vec& weights) {
    nodes.clear();
    weights.clear();
    if (spec.outer_panels <= 0) {
        if (spec.split_outer_at_zero && lo < 0.0 && hi > 0.0) {
            double span = hi - lo;
            int o1 = std::max(6, int(std::lround(order * (-lo) / span)));
            int o2 = std::max(6, int(std::lround(order * hi / span)));
            append_gl(lo, 0.0, o1, nodes, weights);
            append_gl(0.0, hi, o2, nodes, weights);
        } else {
            append_gl(lo, hi, order, nodes, weights);
        }
        return;
    }
    double c = std::clamp(spec.outer_center, lo, hi);
    if (c - lo > 1e-15) {
        Vec n0, w0;
        graded_panels_toward(0.0, c - lo, spec.outer_panels, spec.outer_ratio, order, n0, w0);
        // mirrored so panels accumulate at c from the left
        for (std::size_t i = 0; i < n0.size(); ++i) {
            nodes.push_back(c - n0[i]);
            weights.push_back(w0[i]);
        }
    }
    if (hi - c > 1e-15) {
        Vec n0, w0;
        graded_panels_toward(c, hi, spec.outer_panels, spec.outer_ratio, order, n0, w0);
        for (std::size_t i = 0; i < n0.size(); ++i) {
            nodes.push_back(n0[i]);
            weights.push_back(w0[i]);
        }
    }
}

// One full tensor pass at fixed orders; integrand receives the ambient point.
template <class F>
double region_integral_pass(const GraphDomain& dom, double p, Region region, const Weight& w,
                            const QuadratureSpec& spec, int outer_order, int panel_order,
                            int inner_panels, F&& f) {
    const Box& base = region == Region::G ? dom.inner_box() : dom.outer_box();
    double depth = region == Region::G ? dom.depth_g() : dom.depth_gstar();
    int bd = base.dim();

    std::vector<Vec> xn(bd), xw(bd);
    for (int i = 0; i < bd; ++i) outer_axis_rule(base.lo[i], base.hi[i], spec, outer_order, xn[i], xw[i]);

    Vec zn, zw;
    graded_panels_toward(0.0, depth, inner_panels, spec.grading_ratio, panel_order, zn, zw);

    Vec pt(bd + 1);
    std::vector<std::size_t> idx(bd, 0);
    KahanSum total;
    bool done = false;
    while (!done) {
        double wx = 1.0;
        for (int i = 0; i < bd; ++i) {
            pt[i] = xn[i][idx[i]];
            wx *= xw[i][idx[i]];
        }
        double gx = dom.g()(std::span<const double>(pt.data(), bd));
        double slice = 0.0;
        for (std::size_t k = 0; k < zn.size(); ++k) {
            double z = zn[k];
            pt[bd] = gx - z;
            double v = std::abs(f(std::span<const double>(pt.data(), bd + 1)));
            slice += zw[k] * std::pow(v, p) * w.eval(z, p);
        }
        total.add(wx * slice);
        int i = 0;
        for (; i < bd; ++i) {
            if (++idx[i] < xn[i].size()) break;
            idx[i] = 0;
        }
        done = i == bd;
    }
    return total.value();
}

}  // namespace detail

// (integral |f|^p w)^{1/p} over G or G*; refinement doubles orders until the
// norm stabilizes to rel_tol. Non-convergence is reported, not thrown.
template <class F>
NormResult lp_norm_region_fn(const GraphDomain& dom, double p, Region region, Weight w,
                             const QuadratureSpec& spec, F&& f) {
    if (!(p > 0.0)) throw ConfigError("lp norm: p must be positive");
    NormResult res;
    double prev = -1.0;
    int outer = spec.outer_order, panel = spec.panel_order, panels = spec.inner_panels;
    if (spec.poly_degree > 0) {
        // |f|^p in z is (near-)polynomial of degree p * poly_degree for any
        // boundary function g; raise per-panel orders toward exactness and
        // drop the surplus panels (the singular inv_sqrt weight keeps them).
        int need = int(std::ceil(0.5 * (p * spec.poly_degree + 1.0))) + 2;
        panel = std::max(panel, std::min(need, 80));
        outer = std::max(outer, std::min(need, 96));
        if (w.kind != Weight::Kind::InvSqrt) panels = std::min(panels, 8);
    }
    for (int level = 0; level <= spec.max_levels; ++level) {
        double integral =
            detail::region_integral_pass(dom, p, region, w, spec, outer, panel, panels, f);
        double value = std::pow(integral, 1.0 / p);
        res.levels_used = level + 1;
        if (prev >= 0.0) {
            res.err_est = std::abs(value - prev);
            double scale = std::max(value, 1e-300);
            if (res.err_est <= spec.rel_tol * scale) {
                res.value = value;
                return res;
            }
        }
        prev = value;
        res.value = value;
        outer *= 2;
        panel *= 2;
    }
    res.warning = true;
    return res;
}

NormResult lp_norm_region(const ScalarField& f, const GraphDomain& dom, double p, Region region,
                          Weight w = Weight::none(), const QuadratureSpec& spec = {});

// (int_0^1 |f|^p x^beta dx)^{1/p} with panels graded toward the singular end.
double weighted_1d_norm(const std::function<double(double)>& f, double p, double beta,
                        int panels = 40, int order = 12);

// Composite rule on [a,b] graded toward both endpoints (weights may be
// singular there).
double integrate_interval_graded(const std::function<double(double)>& f, double a, double b,
                                 int panels_per_side = 32, int order = 8, double ratio = 0.25);

// Max over a deterministic family of subintervals J (centers on a uniform
// lattice including the endpoints x dyadic lengths) of
// integral_{2J cap I} w / integral_{J cap I} w, both intervals clipped to I.
double doubling_constant_estimate(const std::function<double(double)>& w, double lo, double hi,
                                  int num_centers = 64, int num_scales = 10);

}  // namespace mz
