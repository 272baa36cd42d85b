#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graph_domain.hpp"
#include "mz_mesh.hpp"
#include "multipoly.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "sharpness.hpp"

namespace mz {

// Two-sided Marcinkiewicz check: discrete sums over mesh nodes against the
// quadrature norm, ratio window [1/2, 2] for every polynomial and node
// choice. Items with a quadrature warning are excluded from the verdict but
// counted.
struct MzOptions {
    std::vector<int> n_list{8};
    double p = 2.0;
    double epsilon = 0.25;
    double alpha = 1.5;  // mesh layer exponent; defaults to the domain model's alpha
    double c0 = 2.0;
    int ensemble = 50;
    std::uint64_t seed = 1;
    NodePolicy node_policy = NodePolicy::Center;
    bool force = false;
    QuadratureSpec quad;
    int threads = 1;
};
ExperimentReport mz_experiment(const GraphDomain& dom, const MzOptions& opts);

// Weighted tangential Bernstein: R(f,n) = ||delta_n^gamma d_tau f||_p(G) /
// (n ||f||_p(G*)); sup over the ensemble per n must stay flat in n.
struct BernsteinOptions {
    std::vector<int> n_list{4, 8, 16, 32};
    double p = 2.0;
    double alpha = 1.5;
    int ensemble = 50;
    std::uint64_t seed = 1;
    double slope_tol = 0.1;
    QuadratureSpec quad;
    int threads = 1;
};
ExperimentReport bernstein_experiment(const GraphDomain& dom, const BernsteinOptions& opts);

// Markov exponent: ||D_{n,mu} f||_p / ||f||_p with the cap max evaluated on a
// fixed quadrature grid; fitted slope of the sup-ratio must not exceed
// 2/alpha + margin.
struct MarkovOptions {
    std::vector<int> n_list{4, 8, 16, 32};
    double p = 2.0;
    double alpha = 1.5;
    double mu = 2.0;
    int ensemble = 12;
    std::uint64_t seed = 1;
    double slope_margin = 0.15;
    int outer_order = 24;
    int inner_panels = 16;
    int panel_order = 6;
    CapScanOptions cap;
    int threads = 1;
};
ExperimentReport markov_experiment(const GraphDomain& dom, const MarkovOptions& opts);

// Sharpness: the extremal Q realizes ratio >= c n^{2/alpha}; fitted slope must
// reach 2/alpha - margin. Also records the strip integral and the tail sup.
struct SharpnessOptions {
    std::vector<int> n_list{8, 16, 32, 64};
    double p = 2.0;
    SharpnessSpec spec;
    double delta_ball = 0.5;
    double slope_margin = 0.15;
    QuadratureSpec quad;
    int threads = 1;
};
ExperimentReport sharpness_experiment(const GraphDomain& dom, SharpnessOptions opts);

struct Lemma73Result {
    double lhs = 0.0, rhs = 0.0, ratio = 0.0;
};
// Single-polynomial discretization inequality of the j^2/4m^2 node family.
Lemma73Result lemma73_single(const ScalarField& f, int n, int m, double beta, double p);

struct Lemma73Options {
    int n = 16;
    int m = 32;  // >= n
    double beta = 0.0;
    double p = 2.0;
    int ensemble = 10;
    std::uint64_t seed = 1;
    double pass_constant = 10.0;  // calibrated uniform bound for the family
};
ExperimentReport lemma73_check(const Lemma73Options& opts);

// Oscillation bound of the partition: sum |I| osc(f;I)^p <= eps^p ||f||_p^p(G*).
struct OscOptions {
    int n = 8;
    std::vector<double> epsilons{0.25};
    double p = 2.0;
    double alpha = 1.5;
    double c0 = 2.0;
    int ensemble = 20;
    std::uint64_t seed = 1;
    int osc_grid = 5;  // per axis; doubled once as a control
    QuadratureSpec quad;
    int threads = 1;
};
ExperimentReport cell_oscillation_check(const GraphDomain& dom, const OscOptions& opts);

// Classical sanity: Chebyshev Markov equality, the Bernstein weight bound,
// and the ball inequality for a small random ensemble.
ExperimentReport classical_sanity_suite(std::uint64_t seed = 1, int ensemble = 20);

// Steklov approximation orders: slopes of the three sup-norm errors against
// delta must sit at alpha, alpha-1, alpha-2.
struct SteklovOptions {
    std::vector<double> deltas;  // empty -> geometric default
    double band = 0.1;
    int panels = 24;
    int panel_order = 10;
};
ExperimentReport steklov_experiment(const AlphaGraphFunction& g, const SteklovOptions& opts);

// JSON-config dispatch used by the C API and the CLI; validates keys and
// ranges, then runs exactly one experiment.
ExperimentReport run_from_config(const nlohmann::json& config);

// Resolves defaults (seed, domain, n_list, threads) without running.
nlohmann::ordered_json resolve_config(const nlohmann::json& config);

}  // namespace mz
