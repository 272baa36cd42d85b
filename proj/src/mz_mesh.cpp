#include "mz_mesh.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace mz {

NodePolicy parse_node_policy(const std::string& s) {
    if (s == "center") return NodePolicy::Center;
    if (s == "random") return NodePolicy::Random;
    if (s == "corner") return NodePolicy::Corner;
    throw ConfigError("unknown node policy: " + s);
}

std::string to_string(NodePolicy p) {
    switch (p) {
        case NodePolicy::Center: return "center";
        case NodePolicy::Random: return "random";
        case NodePolicy::Corner: return "corner";
    }
    return "?";
}

int MeshParams::m() const {
    if (n < 0) throw ConfigError("mesh: n must be >= 0");
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ConfigError("mesh: epsilon must lie in (0,1]");
    if (!(c0 > 0.0)) throw ConfigError("mesh: c0 must be positive");
    int m = static_cast<int>(std::ceil(c0 * n / epsilon - 1e-9));
    return std::max({m, 2 * n, 1});
}

long layer_slab_count(int m, int j, double gamma) {
    double v = m * std::pow(double(m) / double(j), 2.0 * gamma);
    long nj = static_cast<long>(std::ceil(v - 1e-9));
    return std::max<long>(nj, m);
}

MZMesh MZMesh::build(GraphDomain domain, MeshParams params, bool force) {
    int d = domain.dim();
    if (!(params.alpha >= 1.0 && params.alpha <= 2.0))
        throw ConfigError("mesh: alpha must lie in [1,2]");
    if (d >= 3 && !(params.alpha > 2.0 - 2.0 / d) && !force)
        throw ConfigError("mesh: d >= 3 requires alpha > 2 - 2/d for the n^d bound (pass force to override)");
    double gamma = params.gamma();

    MZMesh mesh(std::move(domain), params);
    int m = params.m();
    mesh.m_ = m;
    mesh.layers_.reserve(m);
    std::size_t offset = 0;
    for (int j = 1; j <= m; ++j) {
        MeshLayer layer;
        layer.j = j;
        layer.z_lo = double(j - 1) * double(j - 1) / (4.0 * double(m) * double(m));
        layer.z_hi = double(j) * double(j) / (4.0 * double(m) * double(m));
        layer.per_axis = layer_slab_count(m, j, gamma);
        layer.cell_offset = offset;
        std::size_t per_layer = 1;
        for (int ax = 0; ax < d - 1; ++ax) per_layer *= layer.per_axis;
        offset += per_layer;
        mesh.layers_.push_back(layer);
    }
    mesh.cell_count_ = offset;
    mesh.assign_nodes(params.node_policy, params.seed);
    return mesh;
}

double MZMesh::cell_measure(int j) const {
    const MeshLayer& layer = layers_[j - 1];
    double meas = layer.z_hi - layer.z_lo;
    const Box& d1 = domain_.inner_box();
    for (int ax = 0; ax < dim() - 1; ++ax)
        meas *= (d1.hi[ax] - d1.lo[ax]) / double(layer.per_axis);
    return meas;
}

void MZMesh::cell_box(int j, long i, Vec& x_lo, Vec& x_hi, double& z_lo, double& z_hi) const {
    const MeshLayer& layer = layers_[j - 1];
    const Box& d1 = domain_.inner_box();
    int bd = dim() - 1;
    x_lo.resize(bd);
    x_hi.resize(bd);
    long rem = i;
    for (int ax = 0; ax < bd; ++ax) {
        long k = rem % layer.per_axis;
        rem /= layer.per_axis;
        double w = (d1.hi[ax] - d1.lo[ax]) / double(layer.per_axis);
        x_lo[ax] = d1.lo[ax] + w * double(k);
        x_hi[ax] = d1.lo[ax] + w * double(k + 1);
    }
    z_lo = layer.z_lo;
    z_hi = layer.z_hi;
}

std::size_t MZMesh::global_index(int j, long i) const { return layers_[j - 1].cell_offset + i; }

void MZMesh::assign_nodes(NodePolicy policy, std::uint64_t seed) {
    int d = dim();
    int bd = d - 1;
    nodes_.assign(cell_count_ * d, 0.0);
    Vec x_lo(bd), x_hi(bd), xb(bd);
    for (const MeshLayer& layer : layers_) {
        std::size_t per_layer = 1;
        for (int ax = 0; ax < bd; ++ax) per_layer *= layer.per_axis;
        for (std::size_t i = 0; i < per_layer; ++i) {
            double z_lo, z_hi;
            cell_box(layer.j, long(i), x_lo, x_hi, z_lo, z_hi);
            std::size_t gidx = layer.cell_offset + i;
            double* node = nodes_.data() + gidx * d;
            double z = 0.0;
            switch (policy) {
                case NodePolicy::Center:
                    for (int ax = 0; ax < bd; ++ax) xb[ax] = 0.5 * (x_lo[ax] + x_hi[ax]);
                    z = 0.5 * (z_lo + z_hi);
                    break;
                case NodePolicy::Random: {
                    std::mt19937_64 rng(item_seed(seed, gidx));
                    std::uniform_real_distribution<double> unif(0.0, 1.0);
                    for (int ax = 0; ax < bd; ++ax)
                        xb[ax] = x_lo[ax] + (x_hi[ax] - x_lo[ax]) * unif(rng);
                    z = z_lo + (z_hi - z_lo) * unif(rng);
                    break;
                }
                case NodePolicy::Corner:
                    // lexicographically smallest corner, pushed inside
                    for (int ax = 0; ax < bd; ++ax) xb[ax] = x_lo[ax] + 1e-12;
                    z = z_lo + 1e-12;
                    break;
            }
            for (int ax = 0; ax < bd; ++ax) node[ax] = xb[ax];
            node[bd] = domain_.g()(xb) - z;
        }
    }
    params_.node_policy = policy;
    params_.seed = seed;
    nodes_assigned_ = true;
}

std::span<const double> MZMesh::node(std::size_t global_cell) const {
    return std::span<const double>(nodes_.data() + global_cell * dim(), dim());
}

std::pair<int, long> MZMesh::locate(std::span<const double> pt) const {
    if (!domain_.in_G(pt, 1e-12)) throw DomainError("locate: point outside G");
    int bd = dim() - 1;
    double z = domain_.boundary_gap(pt);
    z = std::clamp(z, 0.0, domain_.depth_g());

    int j = static_cast<int>(std::ceil(2.0 * m_ * std::sqrt(std::max(z, 0.0))));
    j = std::clamp(j, 1, m_);
    while (j > 1 && z <= layers_[j - 1].z_lo) --j;
    while (j < m_ && z > layers_[j - 1].z_hi) ++j;

    const MeshLayer& layer = layers_[j - 1];
    const Box& d1 = domain_.inner_box();
    long flat = 0, stride = 1;
    for (int ax = 0; ax < bd; ++ax) {
        double w = (d1.hi[ax] - d1.lo[ax]) / double(layer.per_axis);
        double u = (pt[ax] - d1.lo[ax]) / w;
        long i = static_cast<long>(std::ceil(u));
        i = std::clamp<long>(i, 1, layer.per_axis);
        while (i > 1 && pt[ax] <= d1.lo[ax] + w * double(i - 1)) --i;
        while (i < layer.per_axis && pt[ax] > d1.lo[ax] + w * double(i)) ++i;
        flat += (i - 1) * stride;
        stride *= layer.per_axis;
    }
    return {j, flat};
}

double MZMesh::total_measure() const {
    KahanSum s;
    int bd = dim() - 1;
    for (const MeshLayer& layer : layers_) {
        std::size_t per_layer = 1;
        for (int ax = 0; ax < bd; ++ax) per_layer *= layer.per_axis;
        double meas = cell_measure(layer.j);
        for (std::size_t i = 0; i < per_layer; ++i) s.add(meas);
    }
    return s.value();
}

nlohmann::ordered_json MZMesh::to_json() const {
    nlohmann::ordered_json j;
    j["params"] = {{"n", params_.n},
                   {"epsilon", params_.epsilon},
                   {"alpha", params_.alpha},
                   {"c0", params_.c0},
                   {"node_policy", to_string(params_.node_policy)},
                   {"seed", params_.seed},
                   {"m", m_},
                   {"dim", dim()}};
    nlohmann::ordered_json layers = nlohmann::ordered_json::array();
    for (const MeshLayer& layer : layers_)
        layers.push_back({{"j", layer.j}, {"z_lo", layer.z_lo}, {"z_hi", layer.z_hi}, {"N_j", layer.per_axis}});
    j["layers"] = std::move(layers);

    nlohmann::ordered_json cells = nlohmann::ordered_json::array();
    int bd = dim() - 1;
    Vec x_lo(bd), x_hi(bd);
    for (const MeshLayer& layer : layers_) {
        std::size_t per_layer = 1;
        for (int ax = 0; ax < bd; ++ax) per_layer *= layer.per_axis;
        for (std::size_t i = 0; i < per_layer; ++i) {
            double z_lo, z_hi;
            cell_box(layer.j, long(i), x_lo, x_hi, z_lo, z_hi);
            std::span<const double> nd = node(layer.cell_offset + i);
            cells.push_back({{"layer", layer.j},
                             {"index", i},
                             {"box", {{"x_lo", x_lo}, {"x_hi", x_hi}, {"z_lo", z_lo}, {"z_hi", z_hi}}},
                             {"measure", cell_measure(layer.j)},
                             {"node", Vec(nd.begin(), nd.end())}});
        }
    }
    j["cells"] = std::move(cells);
    return j;
}

std::string MZMesh::to_csv() const {
    std::ostringstream out;
    out.precision(17);
    int bd = dim() - 1;
    out << "j,i";
    for (int ax = 0; ax < bd; ++ax) out << ",x_lo_" << ax + 1 << ",x_hi_" << ax + 1;
    out << ",z_lo,z_hi,measure";
    for (int ax = 0; ax < dim(); ++ax) out << ",node_" << ax + 1;
    out << "\n";
    Vec x_lo(bd), x_hi(bd);
    for (const MeshLayer& layer : layers_) {
        std::size_t per_layer = 1;
        for (int ax = 0; ax < bd; ++ax) per_layer *= layer.per_axis;
        for (std::size_t i = 0; i < per_layer; ++i) {
            double z_lo, z_hi;
            cell_box(layer.j, long(i), x_lo, x_hi, z_lo, z_hi);
            out << layer.j << "," << i;
            for (int ax = 0; ax < bd; ++ax) out << "," << x_lo[ax] << "," << x_hi[ax];
            out << "," << z_lo << "," << z_hi << "," << cell_measure(layer.j);
            std::span<const double> nd = node(layer.cell_offset + i);
            for (double v : nd) out << "," << v;
            out << "\n";
        }
    }
    return out.str();
}

CardinalityInfo mesh_cardinality(const MeshParams& params, int dim) {
    CardinalityInfo info;
    info.m = params.m();
    double gamma = params.gamma();
    info.per_layer.reserve(info.m);
    for (int j = 1; j <= info.m; ++j) {
        long nj = layer_slab_count(info.m, j, gamma);
        long cells = 1;
        for (int ax = 0; ax < dim - 1; ++ax) cells *= nj;
        info.per_layer.push_back(cells);
        info.total += cells;
    }
    double n = std::max(1, params.n);
    double denom = std::pow(n, double(dim));
    if (dim == 2 && params.alpha == 1.0 && params.n > 1) denom = n * n * std::log(n);
    info.normalized_constant = double(info.total) / denom;
    return info;
}

double discrete_lp_norm(const ScalarField& f, const MZMesh& mesh, double p) {
    if (!mesh.nodes_assigned()) throw ConfigError("discrete_lp_norm: mesh has no nodes assigned");
    if (!(p > 0.0)) throw ConfigError("discrete_lp_norm: p must be positive");
    KahanSum s;
    int bd = mesh.dim() - 1;
    for (const MeshLayer& layer : mesh.layers()) {
        std::size_t per_layer = 1;
        for (int ax = 0; ax < bd; ++ax) per_layer *= layer.per_axis;
        double meas = mesh.cell_measure(layer.j);
        for (std::size_t i = 0; i < per_layer; ++i) {
            double v = std::abs(f.value(mesh.node(layer.cell_offset + i)));
            s.add(meas * std::pow(v, p));
        }
    }
    return std::pow(s.value(), 1.0 / p);
}

}  // namespace mz
