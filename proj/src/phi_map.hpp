#pragma once

#include "common.hpp"
#include "graph_fn.hpp"

namespace mz {

// Change-of-variables gadget Phi(z,t) = (z+t, Q_z(t)) with
// Q_z(t) = g(z) + g'(z) t - (A/2) t^2 for a C^2-certified g on d = 2.
// Parameter domain E = {(z,t) : z, z+t in [-1,2], |t| <= r0}, r0 = sqrt(2/M),
// r1 = 2/sqrt(3M); A sits strictly inside (5M/2, 3M) and is fixed to 11M/4.
class PhiGadget {
public:
    explicit PhiGadget(AlphaGraphFunction g);

    const AlphaGraphFunction& g() const { return g_; }
    double A() const { return A_; }
    double M() const { return M_; }
    double r0() const { return r0_; }
    double r1() const { return r1_; }

    bool in_E(double z, double t) const {
        return z >= -1.0 && z <= 2.0 && z + t >= -1.0 && z + t <= 2.0 && std::abs(t) <= r0_;
    }
    bool in_E_plus(double z, double t) const { return in_E(z, t) && t >= 0.0; }

    // G of the depth-1 construction: 0 <= x <= 1, 0 <= g(x)-y <= 1.
    bool in_G(double x, double y) const {
        double p[1] = {x};
        double gap = g_(std::span<const double>(p, 1)) - y;
        return x >= 0.0 && x <= 1.0 && gap >= -1e-12 && gap <= 1.0 + 1e-12;
    }

    struct ForwardResult {
        double x, y;
        double jacobian;  // |det J_Phi| = (A + g''(z)) |t|
    };
    // Requires (z,t) in E.
    ForwardResult forward(double z, double t) const;

    // Evaluates the map without the E membership check (finite-difference
    // probes step slightly outside).
    ForwardResult forward_unchecked(double z, double t) const;

    struct InverseResult {
        double z, t;
        int iterations;
        double residual;
    };
    // The unique (z,t) in E+ with 0 <= t <= r1 and Phi(z,t) = (x,y), found by
    // bisection on h(t) = g(x) - Q_{x-t}(t); h is strictly increasing with
    // h(0) = 0 and h(r1) >= 1. Requires (x,y) in G.
    InverseResult inverse_plus(double x, double y, double tol = 1e-12, int max_iter = 200) const;

private:
    AlphaGraphFunction g_;
    double M_, A_, r0_, r1_;
};

}  // namespace mz
