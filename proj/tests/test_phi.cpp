#include <doctest.h>

#include <random>

#include "phi_map.hpp"
#include "test_helpers.hpp"

using namespace mz;

TEST_CASE("gadget parameters sit in the proven ranges") {
    for (auto make : {+[]() { return mz::testing::make_zero_g(); },
                      +[]() { return make_model_function("quad", 2); },
                      +[]() { return make_model_function("trig", 2); }}) {
        PhiGadget phi(make());
        CHECK(phi.A() > 2.5 * phi.M());
        CHECK(phi.A() < 3.0 * phi.M());
        CHECK(phi.r1() < phi.r0());
        CHECK(phi.r0() <= 1.0 / 3.0 + 1e-15);
        CHECK(phi.M() >= 18.0);
    }
    // no C^2 certificate -> rejected
    AlphaGraphFunction rough([](std::span<const double> x) { return std::abs(x[0]); },
                             [](std::span<const double> x) { return Vec{x[0] < 0 ? -1.0 : 1.0}; },
                             1.0, 1.001, Box::cube(-8.0, 8.0, 1));
    CHECK_THROWS_AS(PhiGadget{rough}, ConfigError);
}

TEST_CASE("forward map: formula values and the image property") {
    PhiGadget flat(mz::testing::make_zero_g());  // M = 18, A = 49.5
    CHECK(flat.M() == doctest::Approx(18.0));
    CHECK(flat.A() == doctest::Approx(49.5));

    auto at_zero = flat.forward(0.3, 0.0);
    CHECK(at_zero.x == doctest::Approx(0.3));
    CHECK(at_zero.y == doctest::Approx(0.0));  // g(z) = 0
    CHECK(at_zero.jacobian == doctest::Approx(0.0));

    auto r = flat.forward(0.0, 0.1);
    CHECK(r.x == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(r.y == doctest::Approx(-0.2475).epsilon(1e-15));
    CHECK(r.jacobian == doctest::Approx(4.95).epsilon(1e-15));

    CHECK_THROWS_AS(flat.forward(0.0, 0.9), DomainError);

    // Lemma 2.2(i): the image of E lies in the depth-4 band under the graph
    PhiGadget quad(make_model_function("quad", 2));
    for (int iz = 0; iz <= 40; ++iz) {
        for (int it = -20; it <= 20; ++it) {
            double z = -1.0 + 3.0 * iz / 40.0;
            double t = quad.r0() * it / 20.0;
            if (!quad.in_E(z, t)) continue;
            auto fr = quad.forward(z, t);
            double p[1] = {fr.x};
            double gap = quad.g()(std::span<const double>(p, 1)) - fr.y;
            CHECK(fr.x >= -1.0 - 1e-12);
            CHECK(fr.x <= 2.0 + 1e-12);
            CHECK(gap >= -1e-12);
            CHECK(gap <= 4.0 + 1e-12);
        }
    }
}

TEST_CASE("jacobian formula against central differences") {
    std::vector<PhiGadget> gadgets;
    gadgets.emplace_back(make_model_function("quad", 2));
    gadgets.emplace_back(make_model_function("trig", 2));
    for (const PhiGadget& phi : gadgets) {
        const double h = 1e-6;
        int checked = 0;
        for (int iz = 0; iz <= 30; ++iz) {
            for (int it = -15; it <= 15; ++it) {
                double z = -0.9 + 2.7 * iz / 30.0;
                double t = phi.r0() * it / 15.0;
                if (std::abs(t) < 0.05 * phi.r0()) continue;  // away from t = 0
                if (!phi.in_E(z, t)) continue;
                auto fp = [&](double zz, double tt) { return phi.forward_unchecked(zz, tt); };
                double dxdz = (fp(z + h, t).x - fp(z - h, t).x) / (2 * h);
                double dxdt = (fp(z, t + h).x - fp(z, t - h).x) / (2 * h);
                double dydz = (fp(z + h, t).y - fp(z - h, t).y) / (2 * h);
                double dydt = (fp(z, t + h).y - fp(z, t - h).y) / (2 * h);
                double det = std::abs(dxdz * dydt - dxdt * dydz);
                double formula = phi.forward(z, t).jacobian;
                CHECK(std::abs(det - formula) <= 1e-6 * std::max(1.0, formula));
                ++checked;
            }
        }
        CHECK(checked > 500);
    }
}

TEST_CASE("inverse: closed form on the flat gadget") {
    PhiGadget flat(mz::testing::make_zero_g());
    // h(t) = (A/2) t^2, so t = sqrt(-2y/A), z = x - t
    for (double y : {-0.05, -0.3, -0.9}) {
        auto inv = flat.inverse_plus(0.7, y);
        double expect_t = std::sqrt(-2.0 * y / flat.A());
        CHECK(inv.t == doctest::Approx(expect_t).epsilon(1e-10));
        CHECK(inv.z == doctest::Approx(0.7 - expect_t).epsilon(1e-10));
    }
    // y = g(x): t = 0, z = x
    auto on_graph = flat.inverse_plus(0.25, 0.0);
    CHECK(on_graph.t == 0.0);
    CHECK(on_graph.z == 0.25);

    CHECK_THROWS_AS(flat.inverse_plus(0.5, -1.5), DomainError);
}

TEST_CASE("inverse round-trips through the forward map") {
    // g(x) = x^2/4, C^2-certified
    PhiGadget phi(mz::testing::make_parabola_g(0.25));
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ux(0.0, 1.0), ug(0.0, 1.0);
    for (int it = 0; it < 1000; ++it) {
        double x = ux(rng);
        double y = 0.25 * x * x - ug(rng);
        auto inv = phi.inverse_plus(x, y);
        CHECK(inv.t >= 0.0);
        CHECK(inv.t <= phi.r1() + 1e-15);
        auto fwd = phi.forward(inv.z, inv.t);
        CHECK(std::abs(fwd.x - x) <= 1e-10);
        CHECK(std::abs(fwd.y - y) <= 1e-10);
    }
}

TEST_CASE("injectivity probe on E+") {
    PhiGadget phi(make_model_function("quad", 2));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uz(-1.0, 2.0), ut(0.0, phi.r0());
    int done = 0;
    while (done < 1000) {
        double z1 = uz(rng), t1 = ut(rng), z2 = uz(rng), t2 = ut(rng);
        if (!phi.in_E_plus(z1, t1) || !phi.in_E_plus(z2, t2)) continue;
        if (std::max(std::abs(z1 - z2), std::abs(t1 - t2)) < 1e-8) continue;
        auto a = phi.forward(z1, t1), b = phi.forward(z2, t2);
        double dist = std::hypot(a.x - b.x, a.y - b.y);
        CHECK(dist > 1e-14);
        ++done;
    }
}
