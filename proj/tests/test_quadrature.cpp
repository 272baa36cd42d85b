#include <doctest.h>

#include <cmath>

#include "multipoly.hpp"
#include "quadrature.hpp"
#include "test_helpers.hpp"

using namespace mz;
using mz::testing::FnField;

namespace {

GraphDomain flat_quarter() {
    // G = [0,1] x [-1/4, 0], G* = [-2,2] x [-2, 0]
    return GraphDomain(mz::testing::make_zero_g(), Box::cube(0.0, 1.0, 1), Box::cube(-2.0, 2.0, 1),
                       0.25, 2.0);
}

}  // namespace

TEST_CASE("region norms: analytic values on the flat quarter band") {
    GraphDomain dom = flat_quarter();
    FnField one(2, [](std::span<const double>) { return 1.0; },
                [](std::span<const double>) { return Vec{0.0, 0.0}; });
    FnField fx(2, [](std::span<const double> p) { return p[0]; },
               [](std::span<const double>) { return Vec{1.0, 0.0}; });

    // ||1||_{L^2(G)} = sqrt(1/4) = 1/2
    NormResult r1 = lp_norm_region(one, dom, 2.0, Region::G);
    CHECK(r1.value == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_FALSE(r1.warning);

    // ||x||_{L^2(G)} = sqrt(1/3 * 1/4) = 1/sqrt(12)
    NormResult r2 = lp_norm_region(fx, dom, 2.0, Region::G);
    CHECK(r2.value == doctest::Approx(1.0 / std::sqrt(12.0)).epsilon(1e-12));

    // singular weight: int_0^{1/4} z^{-1/2} dz = 1 at p = 1
    NormResult r3 = lp_norm_region(one, dom, 1.0, Region::G, Weight::inv_sqrt(0.0));
    CHECK(r3.value == doctest::Approx(1.0).epsilon(1e-8));

    // NormResult serialization carries the documented fields
    auto j = r1.to_json();
    CHECK(j.contains("value"));
    CHECK(j.contains("err_est"));
    CHECK(j.contains("levels_used"));
    CHECK(j.contains("warning"));
}

TEST_CASE("norm properties: homogeneity, monotonicity, weight consistency") {
    GraphDomain dom = flat_quarter();
    MultiPoly f = MultiPoly::random(2, 6, 21, dom.bounding_box_gstar());

    NormResult base = lp_norm_region(f, dom, 2.0, Region::G);
    MultiPoly f2 = f;
    f2.scale(2.0);
    NormResult twice = lp_norm_region(f2, dom, 2.0, Region::G);
    CHECK(twice.value == doctest::Approx(2.0 * base.value).epsilon(1e-14));

    // enlarging the region never decreases the norm
    NormResult star = lp_norm_region(f, dom, 2.0, Region::Gstar);
    CHECK(star.value >= base.value * (1.0 - 1e-12));

    // gamma = 0 weight is the constant weight: identical sums
    NormResult w0 = lp_norm_region(f, dom, 2.0, Region::G, Weight::delta_n_gamma(3, 0.0));
    CHECK(w0.value == doctest::Approx(base.value).epsilon(1e-12));
}

TEST_CASE("exactness plateau for even p on a flat boundary") {
    GraphDomain dom = flat_quarter();
    MultiPoly f = MultiPoly::random(2, 8, 5, dom.bounding_box_gstar());
    QuadratureSpec spec;
    spec.poly_degree = 8;
    spec.rel_tol = 1e-12;
    NormResult r = lp_norm_region(f, dom, 2.0, Region::G, Weight::none(), spec);
    CHECK_FALSE(r.warning);
    CHECK(r.levels_used == 2);  // first refinement already confirms
    CHECK(r.err_est <= 1e-12 * r.value);
}

TEST_CASE("weighted 1d norms") {
    auto one = [](double) { return 1.0; };
    auto idf = [](double x) { return x; };
    CHECK(weighted_1d_norm(one, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(weighted_1d_norm(one, 1.0, 2.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(weighted_1d_norm(idf, 2.0, 0.0) == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));
    CHECK_THROWS_AS(weighted_1d_norm(one, 1.0, -0.75), ConfigError);
}

TEST_CASE("doubling constants of the model weights") {
    auto one = [](double) { return 1.0; };
    CHECK(doubling_constant_estimate(one, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-9));

    auto idf = [](double x) { return x; };
    CHECK(doubling_constant_estimate(idf, 0.0, 1.0) == doctest::Approx(4.0).epsilon(1e-8));

    // (eps + x)^{-1/2} stays uniformly doubling as eps -> 0
    for (double eps : {1e-6, 1e-4, 1e-2, 1.0}) {
        auto w = [eps](double x) { return 1.0 / std::sqrt(eps + x); };
        double c = doubling_constant_estimate(w, 0.0, 1.0);
        CHECK(c >= 1.8);
        CHECK(c <= 2.2);
    }
}

TEST_CASE("graded interval rule integrates endpoint singularities") {
    // int_0^1 x^{-1/2} = 2
    auto w = [](double x) { return 1.0 / std::sqrt(x); };
    CHECK(integrate_interval_graded(w, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(integrate_interval_graded(w, 1.0, 1.0) == 0.0);
}
