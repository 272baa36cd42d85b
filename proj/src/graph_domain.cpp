#include "graph_domain.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mz {

GraphDomain::GraphDomain(AlphaGraphFunction g, Box inner, Box outer, double depth_g,
                         double depth_gstar)
    : g_(std::move(g)),
      inner_(std::move(inner)),
      outer_(std::move(outer)),
      depth_g_(depth_g),
      depth_gstar_(depth_gstar),
      dim_(inner_.dim() + 1) {
    if (inner_.dim() != outer_.dim() || inner_.dim() != g_.base_dim())
        throw ConfigError("GraphDomain: box/base dimension mismatch");
    if (!outer_.contains_strictly(inner_)) throw ConfigError("GraphDomain: D1 must lie strictly inside D2");
    if (!(depth_g_ > 0.0 && depth_g_ < depth_gstar_))
        throw ConfigError("GraphDomain: need 0 < depth_G < depth_G*");
    if (!g_.base_box().contains(outer_.lo) || !g_.base_box().contains(outer_.hi))
        throw ConfigError("GraphDomain: D2 must lie inside the base box of g");

    // cache sup ||grad g|| over D2
    int bd = inner_.dim();
    const int grid = bd == 1 ? 2049 : 129;
    Vec x(bd);
    std::vector<int> idx(bd, 0);
    bool done = false;
    while (!done) {
        for (int i = 0; i < bd; ++i)
            x[i] = outer_.lo[i] + (outer_.hi[i] - outer_.lo[i]) * idx[i] / double(grid - 1);
        grad_sup_ = std::max(grad_sup_, norm2(g_.gradient(x)));
        int i = 0;
        for (; i < bd; ++i) {
            if (++idx[i] < grid) break;
            idx[i] = 0;
        }
        done = i == bd;
    }
}

double GraphDomain::boundary_gap(std::span<const double> pt) const {
    std::span<const double> x(pt.data(), dim_ - 1);
    return g_(x) - pt[dim_ - 1];
}

bool GraphDomain::in_G(std::span<const double> pt, double tol) const {
    std::span<const double> x(pt.data(), dim_ - 1);
    if (!inner_.contains(x, tol)) return false;
    double gap = boundary_gap(pt);
    return gap >= -tol && gap <= depth_g_ + tol;
}

bool GraphDomain::in_Gstar(std::span<const double> pt, double tol) const {
    std::span<const double> x(pt.data(), dim_ - 1);
    if (!outer_.contains(x, tol)) return false;
    double gap = boundary_gap(pt);
    return gap >= -tol && gap <= depth_gstar_ + tol;
}

double GraphDomain::delta_n(std::span<const double> pt, int n) const {
    if (n < 1) throw ConfigError("delta_n: n must be a positive integer");
    if (!in_Gstar(pt)) throw DomainError("delta_n: point lies outside G*");
    return boundary_gap(pt) + 1.0 / (double(n) * double(n));
}

std::vector<Vec> GraphDomain::tangent_frame(std::span<const double> x_base) const {
    if (!outer_.contains(x_base, 1e-12)) throw DomainError("tangent_frame: base point outside D2");
    Vec grad = g_.gradient(x_base);
    std::vector<Vec> frame;
    frame.reserve(dim_ - 1);
    for (int j = 0; j < dim_ - 1; ++j) {
        Vec v(dim_, 0.0);
        v[j] = 1.0;
        v[dim_ - 1] = grad[j];
        frame.push_back(std::move(v));
    }
    return frame;
}

Vec GraphDomain::unit_normal(std::span<const double> x_base) const {
    Vec grad = g_.gradient(x_base);
    Vec n(dim_);
    double s = 1.0;
    for (int j = 0; j < dim_ - 1; ++j) {
        n[j] = -grad[j];
        s += grad[j] * grad[j];
    }
    n[dim_ - 1] = 1.0;
    double inv = 1.0 / std::sqrt(s);
    for (double& v : n) v *= inv;
    return n;
}

double GraphDomain::c_star() const {
    return 1.0 / (3.0 * std::sqrt(1.0 + grad_sup_ * grad_sup_));
}

Box GraphDomain::bounding_box_gstar() const {
    int bd = dim_ - 1;
    double gmin = 1e300, gmax = -1e300;
    const int grid = bd == 1 ? 4097 : 257;
    Vec x(bd);
    std::vector<int> idx(bd, 0);
    bool done = false;
    while (!done) {
        for (int i = 0; i < bd; ++i)
            x[i] = outer_.lo[i] + (outer_.hi[i] - outer_.lo[i]) * idx[i] / double(grid - 1);
        double v = g_(x);
        gmin = std::min(gmin, v);
        gmax = std::max(gmax, v);
        int i = 0;
        for (; i < bd; ++i) {
            if (++idx[i] < grid) break;
            idx[i] = 0;
        }
        done = i == bd;
    }
    Vec lo(outer_.lo), hi(outer_.hi);
    lo.push_back(gmin - depth_gstar_);
    hi.push_back(gmax);
    return Box(std::move(lo), std::move(hi));
}

Box GraphDomain::bounding_box_g() const {
    int bd = dim_ - 1;
    double gmin = 1e300, gmax = -1e300;
    const int grid = bd == 1 ? 4097 : 257;
    Vec x(bd);
    std::vector<int> idx(bd, 0);
    bool done = false;
    while (!done) {
        for (int i = 0; i < bd; ++i)
            x[i] = inner_.lo[i] + (inner_.hi[i] - inner_.lo[i]) * idx[i] / double(grid - 1);
        double v = g_(x);
        gmin = std::min(gmin, v);
        gmax = std::max(gmax, v);
        int i = 0;
        for (; i < bd; ++i) {
            if (++idx[i] < grid) break;
            idx[i] = 0;
        }
        done = i == bd;
    }
    Vec lo(inner_.lo), hi(inner_.hi);
    lo.push_back(gmin - depth_g_);
    hi.push_back(gmax);
    return Box(std::move(lo), std::move(hi));
}

GraphDomain make_domain(AlphaGraphFunction g, int dim, DomainPreset preset) {
    int bd = dim - 1;
    switch (preset) {
        case DomainPreset::Bernstein:
            return GraphDomain(std::move(g), Box::cube(0.0, 1.0, bd), Box::cube(-1.0, 2.0, bd), 1.0, 8.0);
        case DomainPreset::MZ: {
            double w = dim == 2 ? 2.0 : 2.0 * dim;
            return GraphDomain(std::move(g), Box::cube(0.0, 1.0, bd), Box::cube(-w, w, bd), 0.25, 2.0);
        }
        case DomainPreset::Sharpness:
            return GraphDomain(std::move(g), Box::cube(-0.5, 0.5, bd), Box::cube(-1.0, 1.0, bd), 0.5, 1.0);
    }
    throw ConfigError("unknown domain preset");
}

GraphDomain make_domain(const std::string& model_id, int dim, DomainPreset preset) {
    return make_domain(make_model_function(model_id, dim), dim, preset);
}

double tangential_gradient(const ScalarField& f, const GraphDomain& dom,
                           std::span<const double> u_base, std::span<const double> xi) {
    int d = dom.dim();
    if (!dom.inner_box().contains(u_base, 1e-12))
        throw DomainError("tangential_gradient: u outside D1");
    Vec grad(d);
    f.value_grad(xi, grad);
    Vec n = dom.unit_normal(u_base);
    double proj = dot(grad, n);
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
        double t = grad[i] - proj * n[i];
        s += t * t;
    }
    return std::sqrt(s);
}

namespace {

// Golden-section minimization of a 1D slice.
template <class F>
double golden_min(double a, double b, F&& fn, int iters = 60) {
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - r * (b - a), x2 = a + r * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    for (int it = 0; it < iters && (b - a) > 1e-14; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = fn(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = fn(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

double dist_to_essential_boundary(const GraphDomain& dom, std::span<const double> xi,
                                  int coarse_per_axis) {
    if (!dom.in_G(xi)) throw DomainError("dist_to_essential_boundary: point outside G");
    int bd = dom.dim() - 1;
    const Box& d2 = dom.outer_box();
    const AlphaGraphFunction& g = dom.g();

    auto sq_dist_at = [&](const Vec& x) {
        double s = 0.0;
        for (int i = 0; i < bd; ++i) {
            double t = x[i] - xi[i];
            s += t * t;
        }
        double t = g(x) - xi[bd];
        return s + t * t;
    };

    // coarse scan
    Vec best(bd);
    double best_val = 1e300;
    Vec x(bd);
    std::vector<int> idx(bd, 0);
    bool done = false;
    while (!done) {
        for (int i = 0; i < bd; ++i)
            x[i] = d2.lo[i] + (d2.hi[i] - d2.lo[i]) * idx[i] / double(coarse_per_axis - 1);
        double v = sq_dist_at(x);
        if (v < best_val) {
            best_val = v;
            best = x;
        }
        int i = 0;
        for (; i < bd; ++i) {
            if (++idx[i] < coarse_per_axis) break;
            idx[i] = 0;
        }
        done = i == bd;
    }

    // per-axis golden-section refinement around the coarse minimizer
    for (int sweep = 0; sweep < (bd == 1 ? 1 : 4); ++sweep) {
        for (int axis = 0; axis < bd; ++axis) {
            double h = (d2.hi[axis] - d2.lo[axis]) / double(coarse_per_axis - 1);
            double a = std::max(d2.lo[axis], best[axis] - 1.5 * h);
            double b = std::min(d2.hi[axis], best[axis] + 1.5 * h);
            Vec probe = best;
            best[axis] = golden_min(a, b, [&](double t) {
                probe[axis] = t;
                return sq_dist_at(probe);
            });
        }
    }
    return std::sqrt(sq_dist_at(best));
}

double boundary_cap_max(const ScalarField& f, const GraphDomain& dom, std::span<const double> xi,
                        int n, double mu, double alpha, const CapScanOptions& opts) {
    return boundary_cap_max_given_dist(f, dom, xi, dist_to_essential_boundary(dom, xi), n, mu,
                                       alpha, opts);
}

double boundary_cap_max_given_dist(const ScalarField& f, const GraphDomain& dom,
                                   std::span<const double> xi, double dist, int n, double mu,
                                   double alpha, const CapScanOptions& opts) {
    if (!(mu > 1.0)) throw ConfigError("boundary_cap_max: mu must exceed 1");
    if (n < 1) throw ConfigError("boundary_cap_max: n must be positive");
    int bd = dom.dim() - 1;
    const Box& d1 = dom.inner_box();
    const AlphaGraphFunction& g = dom.g();

    double phi = std::sqrt(dist) + 1.0 / double(n);
    double radius = mu * std::pow(phi, 2.0 / alpha);

    auto in_cap = [&](const Vec& u) {
        double s = 0.0;
        for (int i = 0; i < bd; ++i) {
            double t = u[i] - xi[i];
            s += t * t;
        }
        double t = g(u) - xi[bd];
        return s + t * t <= radius * radius;
    };

    // u = xi_x always participates (clamped into D1), so the cap is nonempty.
    Vec u0(bd);
    for (int i = 0; i < bd; ++i) u0[i] = std::clamp(xi[i], d1.lo[i], d1.hi[i]);
    double best = tangential_gradient(f, dom, u0, xi);

    int per_axis = opts.base_per_axis;
    double prev = -1.0;
    for (int level = 0; level <= opts.max_doublings; ++level) {
        double cur = best;
        Vec u(bd);
        std::vector<int> idx(bd, 0);
        bool done = false;
        while (!done) {
            bool inside_d1 = true;
            for (int i = 0; i < bd; ++i) {
                double lo = std::max(d1.lo[i], xi[i] - radius);
                double hi = std::min(d1.hi[i], xi[i] + radius);
                if (!(lo <= hi)) {
                    inside_d1 = false;
                    break;
                }
                u[i] = lo + (hi - lo) * idx[i] / double(per_axis - 1);
            }
            if (inside_d1 && in_cap(u)) cur = std::max(cur, tangential_gradient(f, dom, u, xi));
            int i = 0;
            for (; i < bd; ++i) {
                if (++idx[i] < per_axis) break;
                idx[i] = 0;
            }
            done = i == bd;
        }
        best = cur;
        if (prev >= 0.0) {
            double denom = std::max(best, 1e-300);
            if (std::abs(best - prev) / denom < opts.rel_stop) break;
        }
        prev = best;
        per_axis *= 2;
    }
    return best;
}

RollingBallReport rolling_ball_check(const GeneralCAlphaDomain& dom, int boundary_samples,
                                     int ball_samples, std::uint64_t seed, double tol) {
    RollingBallReport rep{1e300, 1e300, 0, false};
    if (dom.atlas.empty()) throw ConfigError("rolling_ball_check: empty atlas");
    double a = dom.norm_alpha, k0 = dom.kappa0;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    for (const GraphDomain& patch : dom.atlas) {
        int bd = patch.dim() - 1;
        // keep contact points away from the lateral faces so the balls stay
        // over the patch
        Box sample_box = patch.inner_box().shrunk(1.25 * k0);
        for (int s = 0; s < boundary_samples; ++s) {
            Vec xb(bd);
            for (int i = 0; i < bd; ++i)
                xb[i] = sample_box.lo[i] + (sample_box.hi[i] - sample_box.lo[i]) * unif(rng);
            Vec nrm = patch.unit_normal(xb);
            Vec contact(patch.dim());
            for (int i = 0; i < bd; ++i) contact[i] = xb[i];
            contact[bd] = patch.g()(xb);

            for (int side = 0; side < 2; ++side) {
                double sgn = side == 0 ? -1.0 : 1.0;  // -1: inner ball, +1: outer ball
                Vec center(patch.dim());
                for (int i = 0; i < patch.dim(); ++i) center[i] = contact[i] + sgn * k0 * nrm[i];
                for (int t = 0; t < ball_samples; ++t) {
                    // sample the open l_alpha ball by rejection inside its box
                    Vec pt(patch.dim());
                    double na;
                    do {
                        na = 0.0;
                        for (int i = 0; i < patch.dim(); ++i) {
                            pt[i] = center[i] + k0 * (2.0 * unif(rng) - 1.0);
                            na += std::pow(std::abs(pt[i] - center[i]), a);
                        }
                    } while (std::pow(na, 1.0 / a) >= k0 * (1.0 - 1e-12));
                    double gap = patch.g()(std::span<const double>(pt.data(), bd)) - pt[bd];
                    if (side == 0)
                        rep.worst_inner_margin = std::min(rep.worst_inner_margin, gap);
                    else
                        rep.worst_outer_margin = std::min(rep.worst_outer_margin, -gap);
                    ++rep.samples_checked;
                }
            }
        }
    }
    rep.passed = rep.worst_inner_margin >= -tol && rep.worst_outer_margin >= -tol;
    return rep;
}

}  // namespace mz
