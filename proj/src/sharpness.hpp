#pragma once

#include "common.hpp"
#include "graph_domain.hpp"
#include "jacobi.hpp"

namespace mz {

// Parameters of the extremal polynomial Q(x,y) = x_1 J_n(y) g_n(x,y) with
// g_n(x,y) = (1 - (|x|^2 + (1-y)^2)/T^2)^{bn}. Total degree (2b+1)n + 1.
struct SharpnessSpec {
    int d = 2;
    int n = 8;
    double alpha = 1.5;
    double beta = 0.0;  // 0 -> default 2d+3 (needs beta > 2d+2)
    int b = 0;          // 0 -> scan b in {1..8}
    double T = 0.0;     // 0 -> diameter bound of the target domain
    double a = 0.0;     // 0 -> scan a in {0.1,...,1.0}

    double beta_or_default() const { return beta > 0.0 ? beta : 2.0 * d + 3.0; }
};

// Q held as a structured product of its three factors; expanding to the
// coefficient basis at degree (2b+1)n+1 would be needless and
// ill-conditioned.
class SharpnessPoly final : public ScalarField {
public:
    SharpnessPoly(int d, int n, double beta, int b, double T);

    int dim() const override { return d_; }
    int degree() const { return (2 * b_ + 1) * n_ + 1; }
    int n() const { return n_; }
    int b() const { return b_; }
    double beta() const { return beta_; }
    double T() const { return T_; }

    double value(std::span<const double> pt) const override;
    double value_grad(std::span<const double> pt, std::span<double> grad) const override;

    // The blow-down factor g_n alone (for the |g_n| <= 1 checks).
    double envelope(std::span<const double> pt) const;

private:
    int d_, n_;
    double beta_;
    int b_;
    double T_;
};

// Builds Q with spec defaults resolved against the target domain:
// T from the domain's diameter bound, beta = 2d+3 unless given, b by the
// tail-domination scan, a by the strip scan (both recorded by the caller).
SharpnessPoly build_sharpness_poly(const SharpnessSpec& spec, const GraphDomain& target);

// Diameter bound of G computed from its bounding box.
double domain_diameter_bound(const GraphDomain& dom);

// Smallest b in {1..8} such that sup_{D \ B(e_d, delta_ball)} |Q| is at most
// half of sup_{D_a-ish cap} |Q| at degree n_max; throws ConfigError with
// diagnostics if none qualifies.
int scan_blowdown_exponent(const GraphDomain& dom, const SharpnessSpec& spec, int n_max,
                           double delta_ball = 0.5);

// Grid sup of |Q| over D outside the ball B(e_d, delta_ball).
double tail_sup(const SharpnessPoly& q, const GraphDomain& dom, double delta_ball,
                int grid_per_axis = 64);

// Grid sup of |Q| over the strip D_a = {1 - a/n^2 <= y <= 1}.
double strip_sup(const SharpnessPoly& q, const GraphDomain& dom, double a, int grid_per_axis = 64);

}  // namespace mz
