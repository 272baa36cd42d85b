#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "common.hpp"
#include "graph_domain.hpp"

namespace mz {

enum class NodePolicy { Center, Random, Corner };

NodePolicy parse_node_policy(const std::string& s);
std::string to_string(NodePolicy p);

struct MeshParams {
    int n = 4;              // polynomial degree the mesh is built for
    double epsilon = 0.25;  // oscillation budget in (0,1]
    double alpha = 2.0;
    double c0 = 2.0;  // m = ceil(c0 n / epsilon)
    NodePolicy node_policy = NodePolicy::Center;
    std::uint64_t seed = 0;

    int m() const;
    double gamma() const { return 1.0 / alpha - 0.5; }
};

struct MeshLayer {
    int j;  // 1-based
    double z_lo, z_hi;
    long per_axis;            // N_j
    std::size_t cell_offset;  // global index of the layer's first cell
};

// The section-7/8 partition: layers z in [z_{j-1}, z_j] with z_j = j^2/4m^2,
// each layer sliced into N_j^{d-1} equal sub-cubes of the base box. Cells are
// sheared slabs { x in Q_{i,j}, z_{j-1} <= g(x)-y <= z_j }; geometry and
// measures are implicit in (j, i), only nodes are stored.
class MZMesh {
public:
    static MZMesh build(GraphDomain domain, MeshParams params, bool force = false);

    const GraphDomain& domain() const { return domain_; }
    const MeshParams& params() const { return params_; }
    int dim() const { return domain_.dim(); }
    int m() const { return m_; }
    const std::vector<MeshLayer>& layers() const { return layers_; }
    std::size_t cell_count() const { return cell_count_; }

    double cell_measure(int j) const;  // identical for every cell of layer j
    void cell_box(int j, long i, Vec& x_lo, Vec& x_hi, double& z_lo, double& z_hi) const;
    std::size_t global_index(int j, long i) const;

    bool nodes_assigned() const { return nodes_assigned_; }
    void assign_nodes(NodePolicy policy, std::uint64_t seed);
    std::span<const double> node(std::size_t global_cell) const;

    // (layer j, flat slab index i), 1-based layer; ties toward smaller index.
    std::pair<int, long> locate(std::span<const double> pt) const;

    double total_measure() const;  // compensated sum over all cells

    nlohmann::ordered_json to_json() const;
    std::string to_csv() const;

private:
    MZMesh(GraphDomain domain, MeshParams params) : domain_(std::move(domain)), params_(params) {}

    GraphDomain domain_;
    MeshParams params_;
    int m_ = 0;
    std::vector<MeshLayer> layers_;
    std::size_t cell_count_ = 0;
    Vec nodes_;  // dim() doubles per cell
    bool nodes_assigned_ = false;
};

// N_j = max(m, ceil(m (m/j)^{2 gamma})).
long layer_slab_count(int m, int j, double gamma);

struct CardinalityInfo {
    int m = 0;
    long total = 0;
    std::vector<long> per_layer;
    // N / n^d, or N / (n^2 log n) for alpha = 1, d = 2
    double normalized_constant = 0.0;
};

// Exact counts from the layer formula; no mesh is built.
CardinalityInfo mesh_cardinality(const MeshParams& params, int dim);

// (sum_cells measure * |f(node)|^p)^{1/p}, cells in fixed index order.
double discrete_lp_norm(const ScalarField& f, const MZMesh& mesh, double p);

}  // namespace mz
