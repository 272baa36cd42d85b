#include "phi_map.hpp"

#include <cmath>

namespace mz {

PhiGadget::PhiGadget(AlphaGraphFunction g) : g_(std::move(g)) {
    if (g_.base_dim() != 1) throw ConfigError("PhiGadget: univariate base required (d = 2)");
    if (!g_.is_c2()) throw ConfigError("PhiGadget: g must be C^2-certified");
    if (!(g_.base_box().lo[0] <= -1.0 && g_.base_box().hi[0] >= 2.0))
        throw ConfigError("PhiGadget: base box must cover [-1, 2]");
    M_ = g_.m_cert();  // ||g''|| + 18, so M >= 18 and r0 <= 1/3
    A_ = 11.0 * M_ / 4.0;
    r0_ = std::sqrt(2.0 / M_);
    r1_ = 2.0 / std::sqrt(3.0 * M_);
}

PhiGadget::ForwardResult PhiGadget::forward_unchecked(double z, double t) const {
    double gz = g_.at(z);
    double dgz = g_.deriv_at(z);
    ForwardResult r;
    r.x = z + t;
    r.y = gz + dgz * t - 0.5 * A_ * t * t;
    r.jacobian = (A_ + g_.second_deriv_at(z)) * std::abs(t);
    return r;
}

PhiGadget::ForwardResult PhiGadget::forward(double z, double t) const {
    if (!in_E(z, t)) throw DomainError("phi_forward: (z,t) outside E");
    return forward_unchecked(z, t);
}

PhiGadget::InverseResult PhiGadget::inverse_plus(double x, double y, double tol,
                                                 int max_iter) const {
    if (!in_G(x, y)) throw DomainError("phi_inverse_plus: (x,y) outside G");
    double gx = g_.at(x);
    double target = gx - y;

    auto h = [&](double t) {
        // h(t) = g(x) - Q_{x-t}(t)
        double z = x - t;
        return gx - (g_.at(z) + g_.deriv_at(z) * t - 0.5 * A_ * t * t);
    };

    double lo = 0.0, hi = r1_;
    double h_hi = h(hi);
    if (target <= 0.0) return {x, 0.0, 0, std::abs(target)};
    if (h_hi < target)
        throw ConvergenceError("phi_inverse_plus: monotone-crossing certificate h(r1) >= target failed");

    int it = 0;
    for (; it < max_iter && hi - lo > 1e-17; ++it) {
        double mid = 0.5 * (lo + hi);
        if (h(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    double t = 0.5 * (lo + hi);
    double residual = std::abs(h(t) - target);
    if (residual > tol * std::max(1.0, std::abs(target)) * 100.0)
        throw ConvergenceError("phi_inverse_plus: residual above tolerance after max iterations");
    return {x - t, t, it, residual};
}

}  // namespace mz
