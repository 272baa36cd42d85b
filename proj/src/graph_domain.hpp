#pragma once

#include <string>
#include <vector>

#include "common.hpp"
#include "graph_fn.hpp"

namespace mz {

// Region between the graph y = g(x) and a parallel offset below it:
//   G  = { (x,y) : x in D1, 0 <= g(x)-y <= depth_g }
//   G* = { (x,y) : x in D2, 0 <= g(x)-y <= depth_gstar }
// The essential boundary of G is the graph part over D1; Gamma' denotes the
// graph over D2.
class GraphDomain {
public:
    GraphDomain(AlphaGraphFunction g, Box inner, Box outer, double depth_g, double depth_gstar);

    int dim() const { return dim_; }
    const AlphaGraphFunction& g() const { return g_; }
    const Box& inner_box() const { return inner_; }
    const Box& outer_box() const { return outer_; }
    double depth_g() const { return depth_g_; }
    double depth_gstar() const { return depth_gstar_; }

    // g(x) - y for a full point (x, y); no membership requirement.
    double boundary_gap(std::span<const double> pt) const;

    bool in_G(std::span<const double> pt, double tol = 1e-12) const;
    bool in_Gstar(std::span<const double> pt, double tol = 1e-12) const;

    // delta_n = g(x) - y + 1/n^2; requires pt in G*.
    double delta_n(std::span<const double> pt, int n) const;

    // xi_j(x) = e_j + d_j g(x) e_d, j = 1..d-1; requires x in D2.
    std::vector<Vec> tangent_frame(std::span<const double> x_base) const;

    // Unit outer normal (-grad g(x), 1)/sqrt(1+|grad g|^2) at a base point.
    Vec unit_normal(std::span<const double> x_base) const;

    // max ||grad g|| over D2 (grid estimate, cached at construction).
    double grad_sup_norm() const { return grad_sup_; }
    // Lemma 5.1 constant 1 / (3 sqrt(1 + ||grad g||_inf^2)).
    double c_star() const;

    // Bounding box of G* (and hence of G), used to scale polynomial bases.
    Box bounding_box_gstar() const;
    Box bounding_box_g() const;

private:
    AlphaGraphFunction g_;
    Box inner_, outer_;
    double depth_g_, depth_gstar_;
    int dim_;
    double grad_sup_ = 0.0;
};

// Section presets differ only in the boxes and depths.
enum class DomainPreset {
    Bernstein,  // D1=[0,1]^{d-1}, D2=[-1,2]^{d-1}, depths 1 and 8
    MZ,         // D1=[0,1]^{d-1}, D2=[-2,2]^{d-1} (d=2) / [-2d,2d]^{d-1}, depths 1/4 and 2
    Sharpness,  // D1=[-1/2,1/2]^{d-1} centered at the apex, D2=[-1,1]^{d-1}, depths 1/2 and 1
};

GraphDomain make_domain(const std::string& model_id, int dim, DomainPreset preset);
GraphDomain make_domain(AlphaGraphFunction g, int dim, DomainPreset preset);

// Euclidean norm of the projection of grad f(xi) onto the hyperplane
// orthogonal to (grad g(u), -1); equals max over unit tangent directions at
// (u, g(u)) of |d_eta f(xi)| exactly.
double tangential_gradient(const ScalarField& f, const GraphDomain& dom,
                           std::span<const double> u_base, std::span<const double> xi);

// Distance from xi in G to Gamma' = {(x, g(x)) : x in D2}: coarse grid scan
// followed by per-axis golden-section refinement.
double dist_to_essential_boundary(const GraphDomain& dom, std::span<const double> xi,
                                  int coarse_per_axis = 256);

struct CapScanOptions {
    int base_per_axis = 32;    // starting grid points per axis inside the cap
    double rel_stop = 1e-3;    // two-level stop: doubling changed max by less
    int max_doublings = 4;
};

// D_{n,mu} f(xi): max of |grad_tan,u f(xi)| over boundary points (u, g(u))
// with ||(u,g(u)) - xi|| <= mu * phi^{2/alpha}, phi = sqrt(dist(xi,Gamma')) + 1/n.
// The scan always includes u = xi_x so the cap is never empty.
double boundary_cap_max(const ScalarField& f, const GraphDomain& dom, std::span<const double> xi,
                        int n, double mu, double alpha, const CapScanOptions& opts = {});

// Same with dist(xi, Gamma') already known (quadrature grids reuse it across
// the whole ensemble).
double boundary_cap_max_given_dist(const ScalarField& f, const GraphDomain& dom,
                                   std::span<const double> xi, double dist, int n, double mu,
                                   double alpha, const CapScanOptions& opts = {});

// A cover of a boundary by graph patches plus the two-sided l_alpha
// rolling-ball certificate of radius kappa0.
struct GeneralCAlphaDomain {
    std::vector<GraphDomain> atlas;
    double kappa0;
    double norm_alpha;
};

struct RollingBallReport {
    double worst_inner_margin;  // min over samples of g(x)-y for inner-ball points (>=0 wanted)
    double worst_outer_margin;  // min over samples of y-g(x) for outer-ball points (>=0 wanted)
    long samples_checked;
    bool passed;
};

// Sample check of Definition-style tangency: inner balls stay inside the
// patch, outer balls stay outside. Boundary points are sampled away from the
// lateral faces of each patch.
RollingBallReport rolling_ball_check(const GeneralCAlphaDomain& dom, int boundary_samples,
                                     int ball_samples, std::uint64_t seed, double tol = 1e-9);

}  // namespace mz
