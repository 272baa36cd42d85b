#include "quadrature.hpp"

namespace mz {

NormResult lp_norm_region(const ScalarField& f, const GraphDomain& dom, double p, Region region,
                          Weight w, const QuadratureSpec& spec) {
    return lp_norm_region_fn(dom, p, region, w, spec,
                             [&f](std::span<const double> pt) { return f.value(pt); });
}

double weighted_1d_norm(const std::function<double(double)>& f, double p, double beta,
                        int panels, int order) {
    if (!(beta >= -0.5)) throw ConfigError("weighted_1d_norm: beta must be >= -1/2");
    if (!(p > 0.0)) throw ConfigError("weighted_1d_norm: p must be positive");
    Vec nodes, weights;
    graded_panels_toward(0.0, 1.0, panels, 0.25, order, nodes, weights);
    KahanSum s;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        double x = nodes[i];
        s.add(weights[i] * std::pow(std::abs(f(x)), p) * std::pow(x, beta));
    }
    return std::pow(s.value(), 1.0 / p);
}

double integrate_interval_graded(const std::function<double(double)>& f, double a, double b,
                                 int panels_per_side, int order, double ratio) {
    if (!(b > a)) return 0.0;
    double mid = 0.5 * (a + b);
    Vec nodes, weights;
    // first half: grade toward a (mirror of grading toward mid)
    {
        Vec n0, w0;
        graded_panels_toward(0.0, mid - a, panels_per_side, ratio, order, n0, w0);
        for (std::size_t i = 0; i < n0.size(); ++i) {
            nodes.push_back(a + n0[i]);
            weights.push_back(w0[i]);
        }
    }
    {
        Vec n0, w0;
        graded_panels_toward(0.0, b - mid, panels_per_side, ratio, order, n0, w0);
        for (std::size_t i = 0; i < n0.size(); ++i) {
            nodes.push_back(b - n0[i]);
            weights.push_back(w0[i]);
        }
    }
    KahanSum s;
    for (std::size_t i = 0; i < nodes.size(); ++i) s.add(weights[i] * f(nodes[i]));
    return s.value();
}

double doubling_constant_estimate(const std::function<double(double)>& w, double lo, double hi,
                                  int num_centers, int num_scales) {
    if (!(hi > lo)) throw ConfigError("doubling_constant_estimate: empty interval");
    double len = hi - lo;
    double best = 0.0;
    for (int s = 1; s <= num_scales; ++s) {
        double ell = len / std::pow(2.0, s);
        for (int k = 0; k <= num_centers; ++k) {
            double c = lo + len * k / double(num_centers);
            double ja = std::max(lo, c - 0.5 * ell), jb = std::min(hi, c + 0.5 * ell);
            double da = std::max(lo, c - ell), db = std::min(hi, c + ell);
            if (!(jb > ja)) continue;
            double mass_j = integrate_interval_graded(w, ja, jb);
            double mass_2j = integrate_interval_graded(w, da, db);
            if (!(mass_j > 0.0)) continue;  // zero-mass J skipped
            best = std::max(best, mass_2j / mass_j);
        }
    }
    return best;
}

}  // namespace mz
