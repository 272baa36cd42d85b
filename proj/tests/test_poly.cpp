#include <doctest.h>

#include <cmath>
#include <random>

#include "jacobi.hpp"
#include "multipoly.hpp"
#include "sharpness.hpp"
#include "test_helpers.hpp"

using namespace mz;

TEST_CASE("coefficient counts follow the simplex size") {
    CHECK(MultiPoly::coeff_count(2, 3) == 10);
    CHECK(MultiPoly::coeff_count(3, 8) == 165);
    CHECK(MultiPoly::coeff_count(1, 7) == 8);
    MultiPoly p(2, 3, Box::cube(-1.0, 1.0, 2));
    CHECK(p.coeffs().size() == 10);
}

TEST_CASE("value and gradient on simple polynomials") {
    // constant
    MultiPoly c(2, 0, Box::cube(-1.0, 1.0, 2));
    c.set_coeff({0, 0}, 4.5);
    Vec grad(2);
    CHECK(c.value_grad(Vec{0.3, -0.7}, grad) == doctest::Approx(4.5));
    CHECK(grad[0] == 0.0);
    CHECK(grad[1] == 0.0);

    // x + y on the symmetric unit box: T_1 along each axis
    MultiPoly s(2, 1, Box::cube(-1.0, 1.0, 2));
    s.set_coeff({1, 0}, 1.0);
    s.set_coeff({0, 1}, 1.0);
    CHECK(s.value_grad(Vec{0.3, 0.4}, grad) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(grad[0] == doctest::Approx(1.0));
    CHECK(grad[1] == doctest::Approx(1.0));
}

TEST_CASE("gradient matches central differences on random polynomials") {
    std::mt19937_64 rng(17);
    for (int dim : {1, 2, 3}) {
        for (int trial = 0; trial < 5; ++trial) {
            int degree = 3 + trial * 2;
            Box box = Box::cube(-1.5, 2.5, dim);
            MultiPoly f = MultiPoly::random(dim, degree, 1000 + trial, box);
            std::uniform_real_distribution<double> unif(-1.0, 2.0);
            Vec grad(dim), probe(dim);
            for (int pt = 0; pt < 20; ++pt) {
                for (int i = 0; i < dim; ++i) probe[i] = unif(rng);
                double v = f.value_grad(probe, grad);
                CHECK(v == doctest::Approx(f.value(probe)).epsilon(1e-14));
                const double h = 1e-6;
                for (int i = 0; i < dim; ++i) {
                    Vec lo = probe, hi = probe;
                    lo[i] -= h;
                    hi[i] += h;
                    double fd = (f.value(hi) - f.value(lo)) / (2 * h);
                    double scale = std::max({1.0, std::abs(grad[i])});
                    CHECK(std::abs(fd - grad[i]) <= 1e-6 * scale);
                }
            }
        }
    }
}

TEST_CASE("random ensembles are seed-deterministic") {
    Box box = Box::cube(-1.0, 1.0, 2);
    MultiPoly a = MultiPoly::random(2, 5, 99, box);
    MultiPoly b = MultiPoly::random(2, 5, 99, box);
    CHECK(a.coeffs() == b.coeffs());
    MultiPoly c = MultiPoly::random(2, 5, 100, box);
    CHECK(a.coeffs() != c.coeffs());

    MultiPoly k = MultiPoly::random(2, 0, 1, box);
    CHECK(k.coeffs().size() == 1);  // a constant

    MultiPoly d23 = MultiPoly::random(2, 3, 7, box);
    CHECK(d23.coeffs().size() == 10);
}

TEST_CASE("JSON round trip preserves evaluations") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int trial = 0; trial < 5; ++trial) {
        MultiPoly f = MultiPoly::random(2, 6, 400 + trial, Box({-1.0, -2.0}, {1.5, 0.5}));
        MultiPoly g = MultiPoly::from_json(f.to_json());
        CHECK(g.coeffs() == f.coeffs());
        for (int pt = 0; pt < 10; ++pt) {
            Vec probe{unif(rng), unif(rng) - 0.7};
            CHECK(g.value(probe) == doctest::Approx(f.value(probe)).epsilon(1e-15));
        }
        CHECK(f.to_json()["basis"] == "cheb");
    }
}

TEST_CASE("jacobi recurrence basics") {
    CHECK(jacobi_eval({1.5, 0}, 0.37).first == doctest::Approx(1.0));
    CHECK(jacobi_eval({1.5, 0}, 0.37).second == doctest::Approx(0.0));
    for (double beta : {0.5, 1.0, 7.0}) {
        for (double y : {-0.8, 0.0, 0.3, 1.0}) {
            auto [v, d] = jacobi_eval({beta, 1}, y);
            CHECK(v == doctest::Approx((beta + 1.0) * y).epsilon(1e-14));
            CHECK(d == doctest::Approx(beta + 1.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("endpoint identity J_n(1) = C(n+beta, n)") {
    for (double beta : {1.0, 7.0, 9.0}) {
        for (int n : {1, 2, 5, 11, 20, 30}) {
            double lhs = jacobi_value(n, beta, 1.0);
            double rhs = jacobi_value_at_one(n, beta);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        }
    }
    // integer beta cross-check against exact binomials
    CHECK(jacobi_value(8, 3.0, 1.0) == doctest::Approx(165.0).epsilon(1e-12));  // C(11,8)
    CHECK(jacobi_value(4, 1.0, 1.0) == doctest::Approx(5.0).epsilon(1e-13));    // C(5,4)
}

TEST_CASE("derivative identity against finite differences") {
    const double h = 5e-7;
    for (double beta : {1.0, 7.0}) {
        for (int n : {2, 5, 10, 20, 30}) {
            double max_d = 0.0;
            for (int i = 0; i <= 400; ++i) {
                double y = -1.0 + 2.0 * i / 400.0;
                max_d = std::max(max_d, std::abs(jacobi_eval({beta, n}, y).second));
            }
            for (int i = 0; i <= 400; ++i) {
                double y = -1.0 + 2.0 * i / 400.0;
                double fd = (jacobi_value(n, beta, y + h) - jacobi_value(n, beta, y - h)) / (2 * h);
                double formula = jacobi_eval({beta, n}, y).second;
                CHECK(std::abs(fd - formula) <= 1e-7 * max_d);
            }
        }
    }
}

TEST_CASE("sup norm attained at the endpoints for beta >= -1/2") {
    for (double beta : {-0.5, 0.5, 1.0, 7.0}) {
        for (int n : {5, 17, 30}) {
            double endpoint = std::abs(jacobi_value(n, beta, 1.0));
            for (int i = 0; i <= 10000; ++i) {
                double y = -1.0 + 2.0 * i / 10000.0;
                CHECK(std::abs(jacobi_value(n, beta, y)) <= endpoint * (1.0 + 1e-12));
            }
        }
    }
}

TEST_CASE("sharpness polynomial structure") {
    GraphDomain dom = make_domain("alpha:1.5", 2, DomainPreset::Sharpness);
    double T = domain_diameter_bound(dom);
    SharpnessPoly q(2, 8, 7.0, 1, T);
    CHECK(q.degree() == 3 * 8 + 1);

    // the x1 factor kills Q on {x1 = 0} and at e_d
    CHECK(q.value(Vec{0.0, 0.4}) == 0.0);
    CHECK(q.value(Vec{0.0, 1.0}) == 0.0);
    // the envelope equals 1 exactly at e_d
    CHECK(q.envelope(Vec{0.0, 1.0}) == doctest::Approx(1.0));
    CHECK(q.envelope(Vec{0.2, 0.8}) < 1.0);

    // product-rule gradient against central differences at interior points
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> ux(-0.4, 0.4), uy(0.3, 0.95);
    Vec grad(2);
    for (int it = 0; it < 50; ++it) {
        Vec pt{ux(rng), uy(rng)};
        double v = q.value_grad(pt, grad);
        CHECK(v == doctest::Approx(q.value(pt)).epsilon(1e-13));
        const double h = 1e-6;
        for (int i = 0; i < 2; ++i) {
            Vec lo = pt, hi = pt;
            lo[i] -= h;
            hi[i] += h;
            double fd = (q.value(hi) - q.value(lo)) / (2 * h);
            double scale = std::max(std::abs(grad[i]), std::abs(v) + 1.0);
            CHECK(std::abs(fd - grad[i]) <= 2e-6 * scale);
        }
    }

    CHECK_THROWS_AS(SharpnessPoly(2, 8, -1.0, 1, T), ConfigError);
    CHECK_THROWS_AS(SharpnessPoly(2, 8, 7.0, 0, T), ConfigError);
    CHECK_THROWS_AS(SharpnessPoly(2, 8, 7.0, 1, 0.0), ConfigError);
}

TEST_CASE("blow-down scan dominates the tail") {
    GraphDomain dom = make_domain("alpha:1.5", 2, DomainPreset::Sharpness);
    SharpnessSpec spec;
    spec.d = 2;
    spec.alpha = 1.5;
    int b = scan_blowdown_exponent(dom, spec, 32);
    CHECK(b >= 1);
    CHECK(b <= 8);
    SharpnessPoly q(2, 32, spec.beta_or_default(), b, domain_diameter_bound(dom));
    CHECK(tail_sup(q, dom, 0.5) <= 0.5 * strip_sup(q, dom, 0.5));
}
