#include "sharpness.hpp"

#include <cmath>
#include <sstream>

namespace mz {

SharpnessPoly::SharpnessPoly(int d, int n, double beta, int b, double T)
    : d_(d), n_(n), beta_(beta), b_(b), T_(T) {
    if (d_ < 2) throw ConfigError("SharpnessPoly: d >= 2 required");
    if (n_ < 1) throw ConfigError("SharpnessPoly: n >= 1 required");
    if (!(beta_ > -1.0)) throw ConfigError("SharpnessPoly: beta must exceed -1");
    if (b_ < 1) throw ConfigError("SharpnessPoly: b >= 1 required");
    if (!(T_ > 0.0)) throw ConfigError("SharpnessPoly: T > 0 required");
}

double SharpnessPoly::envelope(std::span<const double> pt) const {
    double r = 0.0;
    for (int i = 0; i < d_ - 1; ++i) r += pt[i] * pt[i];
    double oy = 1.0 - pt[d_ - 1];
    r += oy * oy;
    return std::pow(1.0 - r / (T_ * T_), double(b_) * n_);
}

double SharpnessPoly::value(std::span<const double> pt) const {
    double base = 1.0;
    {
        double r = 0.0;
        for (int i = 0; i < d_ - 1; ++i) r += pt[i] * pt[i];
        double oy = 1.0 - pt[d_ - 1];
        r += oy * oy;
        base = 1.0 - r / (T_ * T_);
    }
    double gn = std::pow(base, double(b_) * n_);
    return pt[0] * jacobi_value(n_, beta_, pt[d_ - 1]) * gn;
}

double SharpnessPoly::value_grad(std::span<const double> pt, std::span<double> grad) const {
    double y = pt[d_ - 1];
    auto [jv, jd] = jacobi_eval({beta_, n_}, y);

    double r = 0.0;
    for (int i = 0; i < d_ - 1; ++i) r += pt[i] * pt[i];
    double oy = 1.0 - y;
    r += oy * oy;
    double base = 1.0 - r / (T_ * T_);
    double bn = double(b_) * n_;
    double gn = std::pow(base, bn);
    // d(g_n)/du = bn base^{bn-1} * d(base)/du
    double gn1 = bn * std::pow(base, bn - 1.0);
    double inv_t2 = 1.0 / (T_ * T_);

    double x1 = pt[0];
    double q = x1 * jv * gn;

    // product rule: Q = x1 * J_n(y) * g_n
    grad[0] = jv * gn + x1 * jv * gn1 * (-2.0 * pt[0] * inv_t2);
    for (int i = 1; i < d_ - 1; ++i) grad[i] = x1 * jv * gn1 * (-2.0 * pt[i] * inv_t2);
    grad[d_ - 1] = x1 * jd * gn + x1 * jv * gn1 * (2.0 * oy * inv_t2);
    return q;
}

double domain_diameter_bound(const GraphDomain& dom) {
    Box bb = dom.bounding_box_g();
    double s = 0.0;
    for (int i = 0; i < bb.dim(); ++i) {
        double w = bb.hi[i] - bb.lo[i];
        s += w * w;
    }
    return std::sqrt(s);
}

namespace {

// Iterates a uniform grid over G (in (x,z) slab coordinates) and reports the
// max of |Q| over points passing `keep`.
template <class Keep>
double grid_sup(const SharpnessPoly& q, const GraphDomain& dom, int grid_per_axis, Keep&& keep) {
    int bd = dom.dim() - 1;
    const Box& d1 = dom.inner_box();
    double best = 0.0;
    Vec x(bd), pt(dom.dim());
    std::vector<int> idx(bd, 0);
    bool done = false;
    while (!done) {
        for (int i = 0; i < bd; ++i)
            x[i] = d1.lo[i] + (d1.hi[i] - d1.lo[i]) * idx[i] / double(grid_per_axis - 1);
        double gx = dom.g()(x);
        for (int k = 0; k < grid_per_axis; ++k) {
            double z = dom.depth_g() * k / double(grid_per_axis - 1);
            for (int i = 0; i < bd; ++i) pt[i] = x[i];
            pt[bd] = gx - z;
            if (!keep(pt)) continue;
            best = std::max(best, std::abs(q.value(pt)));
        }
        int i = 0;
        for (; i < bd; ++i) {
            if (++idx[i] < grid_per_axis) break;
            idx[i] = 0;
        }
        done = i == bd;
    }
    return best;
}

}  // namespace

double tail_sup(const SharpnessPoly& q, const GraphDomain& dom, double delta_ball,
                int grid_per_axis) {
    int d = dom.dim();
    return grid_sup(q, dom, grid_per_axis, [&](const Vec& pt) {
        double s = 0.0;
        for (int i = 0; i < d - 1; ++i) s += pt[i] * pt[i];
        double oy = 1.0 - pt[d - 1];
        return s + oy * oy > delta_ball * delta_ball;
    });
}

double strip_sup(const SharpnessPoly& q, const GraphDomain& dom, double a, int grid_per_axis) {
    // The strip has height a/n^2, far below any global grid resolution, so
    // sample it directly. Its x-extent is at most (a/n^2)^{1/alpha} per
    // coordinate, which sqrt(a)/n covers for every alpha in (1,2].
    int d = dom.dim();
    int bd = d - 1;
    double cut = 1.0 - a / (double(q.n()) * double(q.n()));
    double w = std::sqrt(a) / q.n();
    double sup = 0.0;
    Vec pt(d);
    std::vector<int> idx(bd, 0);
    bool done = false;
    while (!done) {
        for (int i = 0; i < bd; ++i)
            pt[i] = -w + 2.0 * w * idx[i] / double(grid_per_axis - 1);
        for (int k = 0; k < grid_per_axis; ++k) {
            pt[bd] = cut + (1.0 - cut) * k / double(grid_per_axis - 1);
            if (!dom.in_G(pt, 0.0)) continue;
            sup = std::max(sup, std::abs(q.value(pt)));
        }
        int i = 0;
        for (; i < bd; ++i) {
            if (++idx[i] < grid_per_axis) break;
            idx[i] = 0;
        }
        done = i == bd;
    }
    return sup;
}

int scan_blowdown_exponent(const GraphDomain& dom, const SharpnessSpec& spec, int n_max,
                           double delta_ball) {
    double beta = spec.beta_or_default();
    double T = spec.T > 0.0 ? spec.T : domain_diameter_bound(dom);
    std::ostringstream diag;
    for (int b = 1; b <= 8; ++b) {
        SharpnessPoly q(spec.d, n_max, beta, b, T);
        double tail = tail_sup(q, dom, delta_ball);
        double strip = strip_sup(q, dom, spec.a > 0.0 ? spec.a : 0.5);
        if (tail <= 0.5 * strip) return b;
        diag << " b=" << b << " tail=" << tail << " strip=" << strip << ";";
    }
    throw ConfigError("scan_blowdown_exponent: no b in 1..8 dominates the tail:" + diag.str());
}

SharpnessPoly build_sharpness_poly(const SharpnessSpec& spec, const GraphDomain& target) {
    double beta = spec.beta_or_default();
    double T = spec.T > 0.0 ? spec.T : domain_diameter_bound(target);
    int b = spec.b;
    if (b <= 0) b = scan_blowdown_exponent(target, spec, spec.n);
    return SharpnessPoly(spec.d, spec.n, beta, b, T);
}

}  // namespace mz
