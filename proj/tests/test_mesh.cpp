#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "mz_mesh.hpp"
#include "test_helpers.hpp"

using namespace mz;

namespace {

GraphDomain mz_flat() {
    return GraphDomain(mz::testing::make_zero_g(), Box::cube(0.0, 1.0, 1), Box::cube(-2.0, 2.0, 1),
                       0.25, 2.0);
}

}  // namespace

TEST_CASE("layer breaks follow z_j = j^2 / 4m^2") {
    MeshParams mp;
    mp.n = 2;
    mp.epsilon = 1.0;
    mp.alpha = 2.0;
    CHECK(mp.m() == 4);
    MZMesh mesh = MZMesh::build(mz_flat(), mp);
    REQUIRE(mesh.layers().size() == 4);
    Vec expected{1.0 / 64, 1.0 / 16, 9.0 / 64, 0.25};
    for (int j = 1; j <= 4; ++j) {
        CHECK(mesh.layers()[j - 1].z_lo ==
              doctest::Approx(j == 1 ? 0.0 : expected[j - 2]).epsilon(1e-15));
        CHECK(mesh.layers()[j - 1].z_hi == doctest::Approx(expected[j - 1]).epsilon(1e-15));
    }
}

TEST_CASE("alpha = 2 collapses to the uniform grid") {
    MeshParams mp;
    mp.n = 4;
    mp.epsilon = 1.0;
    mp.alpha = 2.0;
    CHECK(mp.m() == 8);
    MZMesh mesh = MZMesh::build(mz_flat(), mp);
    CHECK(mesh.cell_count() == 64);
    for (const MeshLayer& layer : mesh.layers()) CHECK(layer.per_axis == 8);
    // d=2 cell measure (2j-1)/(4 m^2 N_j)
    for (int j = 1; j <= 8; ++j)
        CHECK(mesh.cell_measure(j) == doctest::Approx((2.0 * j - 1) / (4.0 * 64.0 * 8.0)).epsilon(1e-15));
}

TEST_CASE("slab counts realize N_j = max(m, ceil(m (m/j)^{2 gamma}))") {
    double gamma = 1.0 / 1.5 - 0.5;
    for (int j = 1; j <= 8; ++j) {
        long expect = std::max<long>(
            8, static_cast<long>(std::ceil(8.0 * std::pow(8.0 / j, 2.0 * gamma) - 1e-9)));
        CHECK(layer_slab_count(8, j, gamma) == expect);
    }
    // gamma = 1/2 at alpha = 1
    CHECK(layer_slab_count(8, 1, 0.5) == 64);
    CHECK(layer_slab_count(8, 8, 0.5) == 8);
}

TEST_CASE("partition sums to |D1|/4 at 1e-12") {
    for (double alpha : {1.25, 1.5, 2.0}) {
        for (int n : {4, 16, 64}) {
            MeshParams mp;
            mp.n = n;
            mp.alpha = alpha;
            MZMesh mesh = MZMesh::build(make_domain("alpha:1.5", 2, DomainPreset::MZ), mp);
            double expect = mesh.domain().inner_box().volume() * 0.25;
            CHECK(std::abs(mesh.total_measure() - expect) <= 1e-12 * expect);
        }
    }
}

TEST_CASE("d = 3 cube layers") {
    MeshParams mp;
    mp.n = 2;
    mp.epsilon = 1.0;
    mp.alpha = 2.0;
    CHECK(mp.m() == 4);
    MZMesh mesh = MZMesh::build(make_domain("alpha:2", 3, DomainPreset::MZ), mp);
    // N = sum_j N_j^2 = 4 * 16
    CHECK(mesh.cell_count() == 64);
    // cell measure (2j-1) / (4 m^2 N_j^2)
    for (int j = 1; j <= 4; ++j)
        CHECK(mesh.cell_measure(j) ==
              doctest::Approx((2.0 * j - 1) / (4.0 * 16.0 * 16.0)).epsilon(1e-15));
    double expect = mesh.domain().inner_box().volume() * 0.25;
    CHECK(std::abs(mesh.total_measure() - expect) <= 1e-12 * expect);

    // threshold refusal below alpha = 2 - 2/d unless forced
    MeshParams bad = mp;
    bad.alpha = 1.2;
    CHECK_THROWS_AS(MZMesh::build(make_domain("alpha:1.5", 3, DomainPreset::MZ), bad), ConfigError);
    MZMesh forced = MZMesh::build(make_domain("alpha:1.5", 3, DomainPreset::MZ), bad, true);
    CHECK(forced.cell_count() > 0);
}

TEST_CASE("node policies stay inside their cells") {
    GraphDomain dom = make_domain("alpha:1.5", 2, DomainPreset::MZ);
    for (NodePolicy policy : {NodePolicy::Center, NodePolicy::Random, NodePolicy::Corner}) {
        MeshParams mp;
        mp.n = 6;
        mp.alpha = 1.5;
        mp.node_policy = policy;
        mp.seed = 77;
        MZMesh mesh = MZMesh::build(dom, mp);
        Vec x_lo, x_hi;
        for (const MeshLayer& layer : mesh.layers()) {
            for (long i = 0; i < layer.per_axis; ++i) {
                double z_lo, z_hi;
                mesh.cell_box(layer.j, i, x_lo, x_hi, z_lo, z_hi);
                std::span<const double> nd = mesh.node(mesh.global_index(layer.j, i));
                CHECK(nd[0] >= x_lo[0]);
                CHECK(nd[0] <= x_hi[0]);
                double z = dom.boundary_gap(nd);
                CHECK(z >= z_lo - 1e-15);
                CHECK(z <= z_hi + 1e-15);
                CHECK(dom.in_G(nd, 1e-12));
                // locate returns the owning cell for every policy
                auto [lj, li] = mesh.locate(nd);
                CHECK(lj == layer.j);
                CHECK(li == i);
            }
        }
    }
}

TEST_CASE("random nodes are reproducible per seed") {
    GraphDomain dom = make_domain("quad", 2, DomainPreset::MZ);
    MeshParams mp;
    mp.n = 5;
    mp.alpha = 2.0;
    mp.node_policy = NodePolicy::Random;
    mp.seed = 123;
    MZMesh a = MZMesh::build(dom, mp);
    MZMesh b = MZMesh::build(dom, mp);
    for (std::size_t i = 0; i < a.cell_count(); ++i) {
        std::span<const double> na = a.node(i), nb = b.node(i);
        CHECK(na[0] == nb[0]);
        CHECK(na[1] == nb[1]);
    }
    mp.seed = 124;
    MZMesh c = MZMesh::build(dom, mp);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.cell_count() && !any_diff; ++i)
        any_diff = a.node(i)[0] != c.node(i)[0];
    CHECK(any_diff);
}

TEST_CASE("center node of the flat first slab") {
    // g == 0, D1 = [0,1], m = 2: first layer [0, 1/16], cells of width 1/2;
    // shrink to the documented [0, 1/4] cell via m = 2 -> N_j = 2... use the
    // explicit example: cell [0, 1/4] x [z0, z1] with center policy
    MeshParams mp;
    mp.n = 1;
    mp.epsilon = 0.5;
    mp.alpha = 2.0;  // m = max(ceil(2*1/0.5), 2) = 4, N_j = 4: first cell [0, 1/4]
    MZMesh mesh = MZMesh::build(mz_flat(), mp);
    REQUIRE(mesh.layers()[0].per_axis == 4);
    std::span<const double> nd = mesh.node(0);
    double z0 = mesh.layers()[0].z_lo, z1 = mesh.layers()[0].z_hi;
    CHECK(nd[0] == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(nd[1] == doctest::Approx(-(z0 + z1) / 2.0).epsilon(1e-15));
}

TEST_CASE("locate resolves boundary ties toward the smaller index") {
    GraphDomain dom = mz_flat();
    MeshParams mp;
    mp.n = 4;
    mp.alpha = 1.5;
    MZMesh mesh = MZMesh::build(dom, mp);
    int m = mesh.m();

    // gap 0 -> layer 1
    Vec top{0.5, 0.0};
    CHECK(mesh.locate(top).first == 1);
    // gap 1/4 -> layer m
    Vec bottom{0.5, -0.25};
    CHECK(mesh.locate(bottom).first == m);
    // gap exactly z_1 belongs to layer 1
    Vec tie{0.5, -mesh.layers()[0].z_hi};
    CHECK(mesh.locate(tie).first == 1);
    // x exactly on an interior slab boundary belongs to the smaller index
    long nj = mesh.layers()[0].per_axis;
    Vec xtie{1.0 / double(nj), -1e-9};
    CHECK(mesh.locate(xtie).second == 0);

    Vec outside{0.5, 0.5};
    CHECK_THROWS_AS(mesh.locate(outside), DomainError);
}

TEST_CASE("coverage: random points land in exactly one cell") {
    GraphDomain dom = make_domain("alpha:1.5", 2, DomainPreset::MZ);
    MeshParams mp;
    mp.n = 8;
    mp.alpha = 1.5;
    MZMesh mesh = MZMesh::build(dom, mp);
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int it = 0; it < 10000; ++it) {
        Vec x{unif(rng)};
        double z = unif(rng) * 0.25;
        Vec pt{x[0], dom.g()(x) - z};
        auto [j, i] = mesh.locate(pt);
        // the defining inequalities of the located cell hold
        Vec x_lo, x_hi;
        double z_lo, z_hi;
        mesh.cell_box(j, i, x_lo, x_hi, z_lo, z_hi);
        CHECK(z >= z_lo - 1e-12);
        CHECK(z <= z_hi + 1e-12);
        CHECK(pt[0] >= x_lo[0] - 1e-12);
        CHECK(pt[0] <= x_hi[0] + 1e-12);
    }
}

TEST_CASE("per-layer counts are monotone and floored at m") {
    for (double alpha : {1.25, 1.5, 1.75, 2.0}) {
        MeshParams mp;
        mp.n = 16;
        mp.alpha = alpha;
        CardinalityInfo info = mesh_cardinality(mp, 2);
        long prev = -1;
        for (std::size_t j = 0; j < info.per_layer.size(); ++j) {
            CHECK(info.per_layer[j] >= info.m);
            if (prev >= 0) CHECK(info.per_layer[j] <= prev);
            prev = info.per_layer[j];
        }
    }
}

TEST_CASE("cardinality scaling and the alpha = 1 log variant") {
    // d=2, alpha=2, m=8 -> N = 64; d=3, alpha=2, m=4 -> N = 64
    MeshParams mp;
    mp.n = 4;
    mp.epsilon = 1.0;
    mp.alpha = 2.0;
    CHECK(mesh_cardinality(mp, 2).total == 64);
    mp.n = 2;
    CHECK(mesh_cardinality(mp, 3).total == 64);

    // alpha = 1.5, m = 8 table against the direct formula
    MeshParams mp2;
    mp2.n = 4;
    mp2.epsilon = 1.0;
    mp2.alpha = 1.5;
    CardinalityInfo info = mesh_cardinality(mp2, 2);
    long expect_total = 0;
    for (int j = 1; j <= 8; ++j)
        expect_total += std::max<long>(
            8, static_cast<long>(std::ceil(8.0 * std::pow(8.0 / j, 1.0 / 3.0) - 1e-9)));
    CHECK(info.total == expect_total);

    // the alpha = 1 normalization divides by n^2 log n
    MeshParams mp3;
    mp3.n = 32;
    mp3.alpha = 1.0;
    CardinalityInfo li = mesh_cardinality(mp3, 2);
    CHECK(li.normalized_constant ==
          doctest::Approx(double(li.total) / (32.0 * 32.0 * std::log(32.0))).epsilon(1e-12));

    // out-of-range alpha rejected
    MeshParams bad;
    bad.alpha = 2.5;
    CHECK_THROWS_AS(MZMesh::build(mz_flat(), bad), ConfigError);
}

TEST_CASE("serialization carries layers, cells, and nodes") {
    MeshParams mp;
    mp.n = 2;
    mp.epsilon = 1.0;
    mp.alpha = 2.0;
    MZMesh mesh = MZMesh::build(mz_flat(), mp);
    auto j = mesh.to_json();
    CHECK(j["params"]["m"] == 4);
    CHECK(j["layers"].size() == 4);
    CHECK(j["cells"].size() == 16);
    CHECK(j["cells"][0].contains("measure"));
    CHECK(j["cells"][0].contains("node"));

    std::string csv = mesh.to_csv();
    CHECK(csv.rfind("j,i,x_lo_1,x_hi_1,z_lo,z_hi,measure,node_1,node_2", 0) == 0);
    // header + one row per cell
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);
}

TEST_CASE("discrete norms over meshes") {
    GraphDomain dom = mz_flat();
    MeshParams mp;
    mp.n = 3;
    mp.alpha = 2.0;
    MZMesh mesh = MZMesh::build(dom, mp);

    mz::testing::FnField one(2, [](std::span<const double>) { return 1.0; },
                             [](std::span<const double>) { return Vec{0.0, 0.0}; });
    // (sum measures)^{1/p} = (1/4)^{1/2}
    CHECK(discrete_lp_norm(one, mesh, 2.0) == doctest::Approx(0.5).epsilon(1e-13));
    mz::testing::FnField zero(2, [](std::span<const double>) { return 0.0; },
                              [](std::span<const double>) { return Vec{0.0, 0.0}; });
    CHECK(discrete_lp_norm(zero, mesh, 2.0) == 0.0);
}
