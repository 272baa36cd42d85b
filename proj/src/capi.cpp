#include "mzmesh.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "experiments.hpp"
#include "graph_domain.hpp"
#include "mz_mesh.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

mz_status classify(const std::exception& e) {
    set_error(e.what());
    if (dynamic_cast<const mz::ConfigError*>(&e)) return MZ_ERR_INVALID_CONFIG;
    if (dynamic_cast<const mz::DomainError*>(&e)) return MZ_ERR_DOMAIN;
    if (dynamic_cast<const mz::ConvergenceError*>(&e)) return MZ_ERR_CONVERGENCE;
    if (dynamic_cast<const std::invalid_argument*>(&e)) return MZ_ERR_INVALID_ARGUMENT;
    return MZ_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

struct mz_domain_s {
    mz::GraphDomain dom;
};

struct mz_mesh_s {
    mz::MZMesh mesh;
};

struct mz_report_s {
    mz::ExperimentReport rep;
    std::string json_cache;
    std::string csv_cache;
    std::string verdict_cache;
};

extern "C" {

const char* mz_version(void) { return "mzmesh 1.0.0"; }

const char* mz_last_error(void) { return g_last_error.c_str(); }

void mz_string_free(char* s) { std::free(s); }

mz_status mz_domain_create(const char* model_id, int dim, const char* preset, mz_domain** out) {
    if (!model_id || !preset || !out) {
        set_error("null argument");
        return MZ_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    try {
        mz::DomainPreset p;
        std::string ps = preset;
        if (ps == "mz")
            p = mz::DomainPreset::MZ;
        else if (ps == "bernstein")
            p = mz::DomainPreset::Bernstein;
        else if (ps == "sharpness")
            p = mz::DomainPreset::Sharpness;
        else
            throw mz::ConfigError("unknown preset: " + ps);
        *out = new mz_domain_s{mz::make_domain(model_id, dim, p)};
        return MZ_OK;
    } catch (const std::exception& e) {
        return classify(e);
    }
}

void mz_domain_free(mz_domain* dom) { delete dom; }

mz_status mz_domain_contains(const mz_domain* dom, const double* point, int region, int* out) {
    if (!dom || !point || !out) {
        set_error("null argument");
        return MZ_ERR_INVALID_ARGUMENT;
    }
    try {
        std::span<const double> pt(point, dom->dom.dim());
        *out = region == 0 ? dom->dom.in_G(pt) : dom->dom.in_Gstar(pt);
        return MZ_OK;
    } catch (const std::exception& e) {
        return classify(e);
    }
}

mz_status mz_domain_delta_n(const mz_domain* dom, const double* point, int n, double* out) {
    if (!dom || !point || !out) {
        set_error("null argument");
        return MZ_ERR_INVALID_ARGUMENT;
    }
    try {
        *out = dom->dom.delta_n(std::span<const double>(point, dom->dom.dim()), n);
        return MZ_OK;
    } catch (const std::exception& e) {
        return classify(e);
    }
}

mz_status mz_domain_dist_to_boundary(const mz_domain* dom, const double* point, double* out) {
    if (!dom || !point || !out) {
        set_error("null argument");
        return MZ_ERR_INVALID_ARGUMENT;
    }
    try {
        *out = mz::dist_to_essential_boundary(dom->dom, std::span<const double>(point, dom->dom.dim()));
        return MZ_OK;
    } catch (const std::exception& e) {
        return classify(e);
    }
}

mz_status mz_mesh_build(const mz_domain* dom, int n, double epsilon, double c0,
                        const char* node_policy, uint64_t seed, int force, mz_mesh** out) {
    if (!dom || !node_policy || !out) {
        set_error("null argument");
        return MZ_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    try {
        mz::MeshParams params;
        params.n = n;
        params.epsilon = epsilon;
        params.alpha = dom->dom.g().alpha();
        params.c0 = c0;
        params.node_policy = mz::parse_node_policy(node_policy);
        params.seed = seed;
        *out = new mz_mesh_s{mz::MZMesh::build(dom->dom, params, force != 0)};
        return MZ_OK;
    } catch (const std::exception& e) {
        return classify(e);
    }
}

void mz_mesh_free(mz_mesh* mesh) { delete mesh; }

mz_status mz_mesh_cell_count(const mz_mesh* mesh, size_t* out) {
    if (!mesh || !out) {
        set_error("null argument");
        return MZ_ERR_INVALID_ARGUMENT;
    }
    *out = mesh->mesh.cell_count();
    return MZ_OK;
}

mz_status mz_mesh_layer_count(const mz_mesh* mesh, int* out) {
    if (!mesh || !out) {
        set_error("null argument");
        return MZ_ERR_INVALID_ARGUMENT;
    }
    *out = mesh->mesh.m();
    return MZ_OK;
}

mz_status mz_mesh_total_measure(const mz_mesh* mesh, double* out) {
    if (!mesh || !out) {
        set_error("null argument");
        return MZ_ERR_INVALID_ARGUMENT;
    }
    *out = mesh->mesh.total_measure();
    return MZ_OK;
}

mz_status mz_mesh_locate(const mz_mesh* mesh, const double* point, int* layer, long* index) {
    if (!mesh || !point || !layer || !index) {
        set_error("null argument");
        return MZ_ERR_INVALID_ARGUMENT;
    }
    try {
        auto [j, i] = mesh->mesh.locate(std::span<const double>(point, mesh->mesh.dim()));
        *layer = j;
        *index = i;
        return MZ_OK;
    } catch (const std::exception& e) {
        return classify(e);
    }
}

mz_status mz_mesh_to_json(const mz_mesh* mesh, char** out) {
    if (!mesh || !out) {
        set_error("null argument");
        return MZ_ERR_INVALID_ARGUMENT;
    }
    try {
        *out = dup_string(mesh->mesh.to_json().dump(2));
        return *out ? MZ_OK : MZ_ERR_INTERNAL;
    } catch (const std::exception& e) {
        return classify(e);
    }
}

mz_status mz_mesh_to_csv(const mz_mesh* mesh, char** out) {
    if (!mesh || !out) {
        set_error("null argument");
        return MZ_ERR_INVALID_ARGUMENT;
    }
    try {
        *out = dup_string(mesh->mesh.to_csv());
        return *out ? MZ_OK : MZ_ERR_INTERNAL;
    } catch (const std::exception& e) {
        return classify(e);
    }
}

mz_status mz_run_config(const char* config_json, mz_report** out) {
    if (!config_json || !out) {
        set_error("null argument");
        return MZ_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    try {
        nlohmann::json config = nlohmann::json::parse(config_json);
        auto rep = std::make_unique<mz_report_s>();
        rep->rep = mz::run_from_config(config);
        rep->json_cache = rep->rep.to_json().dump(2) + "\n";
        rep->csv_cache = rep->rep.summary_csv();
        rep->verdict_cache = rep->rep.verdict_line();
        *out = rep.release();
        return MZ_OK;
    } catch (const nlohmann::json::parse_error& e) {
        set_error(std::string("config parse error: ") + e.what());
        return MZ_ERR_INVALID_CONFIG;
    } catch (const std::exception& e) {
        return classify(e);
    }
}

mz_status mz_resolve_config(const char* config_json, char** out) {
    if (!config_json || !out) {
        set_error("null argument");
        return MZ_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    try {
        nlohmann::json config = nlohmann::json::parse(config_json);
        *out = dup_string(mz::resolve_config(config).dump(2) + "\n");
        return *out ? MZ_OK : MZ_ERR_INTERNAL;
    } catch (const nlohmann::json::parse_error& e) {
        set_error(std::string("config parse error: ") + e.what());
        return MZ_ERR_INVALID_CONFIG;
    } catch (const std::exception& e) {
        return classify(e);
    }
}

void mz_report_free(mz_report* report) { delete report; }

int mz_report_passed(const mz_report* report) { return report && report->rep.passed ? 1 : 0; }

const char* mz_report_json(const mz_report* report) {
    return report ? report->json_cache.c_str() : "";
}

const char* mz_report_summary_csv(const mz_report* report) {
    return report ? report->csv_cache.c_str() : "";
}

const char* mz_report_verdict(const mz_report* report) {
    return report ? report->verdict_cache.c_str() : "";
}

double mz_report_wall_seconds(const mz_report* report) {
    return report ? report->rep.wall_seconds : 0.0;
}

}  // extern "C"
