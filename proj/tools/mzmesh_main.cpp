// Command-line front end. Links the mzmesh C API only: flags (or a JSON
// config file, flags winning) are assembled into a config object and handed
// to mz_run_config; artifacts are written from the returned report.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mzmesh.h"

namespace {

using nlohmann::json;

struct Flags {
    std::string config_path;
    std::string domain;
    int d = 0;
    double alpha = 0.0;
    int n = 0;
    std::vector<int> n_list;
    double p = 0.0;
    double epsilon = 0.0;
    double mu = 0.0;
    double beta = 0.0;
    int b = 0;
    std::uint64_t seed = 0;
    int ensemble = 0;
    std::string nodes;
    double c0 = 0.0;
    int quad_order = 0;
    double rel_tol = 0.0;
    std::string out_json, out_csv;
    int threads = 0;
    bool force = false;
    bool print_config = false;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file; explicit flags override it");
    cmd->add_option("--domain", f.domain, "model domain id: quad | alpha:<a> | trig");
    cmd->add_option("--d", f.d, "ambient dimension");
    cmd->add_option("--alpha", f.alpha, "smoothness exponent in [1,2]");
    cmd->add_option("--n", f.n, "polynomial degree");
    cmd->add_option("--n-list", f.n_list, "degree list, comma separated")->delimiter(',');
    cmd->add_option("--p", f.p, "L^p exponent");
    cmd->add_option("--epsilon", f.epsilon, "oscillation budget in (0,1]");
    cmd->add_option("--mu", f.mu, "cap radius parameter (> 1)");
    cmd->add_option("--beta", f.beta, "Jacobi / weight exponent");
    cmd->add_option("--b", f.b, "blow-down exponent (0 = auto scan)");
    cmd->add_option("--seed", f.seed, "64-bit seed (auto-generated and recorded if absent)");
    cmd->add_option("--ensemble", f.ensemble, "random polynomials per configuration");
    cmd->add_option("--nodes", f.nodes, "node policy: center | random | corner")
        ->check(CLI::IsMember({"center", "random", "corner"}));
    cmd->add_option("--c0", f.c0, "layer-count constant in m = ceil(c0 n / epsilon)");
    cmd->add_option("--quad-order", f.quad_order, "outer quadrature order per axis");
    cmd->add_option("--rel-tol", f.rel_tol, "quadrature refinement target");
    cmd->add_option("--out-json", f.out_json, "write the full report JSON here");
    cmd->add_option("--out-csv", f.out_csv, "write the summary CSV here");
    cmd->add_option("--threads", f.threads, "thread budget (default: MZMESH_THREADS or cores)");
    cmd->add_flag("--force", f.force, "override the d>=3 alpha threshold refusal");
    cmd->add_flag("--print-config", f.print_config, "echo the fully resolved config and exit");
}

json build_config(const CLI::App& cmd, const Flags& f, const std::string& command) {
    json cfg = json::object();
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw std::runtime_error("cannot open config file: " + f.config_path);
        in >> cfg;
        if (!cfg.is_object()) throw std::runtime_error("config file must hold a JSON object");
    }
    cfg["command"] = command;
    auto seen = [&cmd](const std::string& name) { return cmd.count(name) > 0; };
    if (seen("--domain")) cfg["domain"] = f.domain;
    if (seen("--d")) cfg["d"] = f.d;
    if (seen("--alpha")) cfg["alpha"] = f.alpha;
    if (seen("--n")) cfg["n"] = f.n;
    if (seen("--n-list")) cfg["n_list"] = f.n_list;
    if (seen("--p")) cfg["p"] = f.p;
    if (seen("--epsilon")) cfg["epsilon"] = f.epsilon;
    if (seen("--mu")) cfg["mu"] = f.mu;
    if (seen("--beta")) cfg["beta"] = f.beta;
    if (seen("--b")) cfg["b"] = f.b;
    if (seen("--seed")) cfg["seed"] = f.seed;
    if (seen("--ensemble")) cfg["ensemble"] = f.ensemble;
    if (seen("--nodes")) cfg["nodes"] = f.nodes;
    if (seen("--c0")) cfg["c0"] = f.c0;
    if (seen("--quad-order")) cfg["quad_order"] = f.quad_order;
    if (seen("--rel-tol")) cfg["rel_tol"] = f.rel_tol;
    if (seen("--out-json")) cfg["out_json"] = f.out_json;
    if (seen("--out-csv")) cfg["out_csv"] = f.out_csv;
    if (seen("--threads")) cfg["threads"] = f.threads;
    if (seen("--force")) cfg["force"] = true;
    return cfg;
}

bool write_file(const std::string& path, const char* data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << data;
    return bool(out);
}

int run_command(const CLI::App& cmd, const Flags& f, const std::string& command) {
    json cfg;
    try {
        cfg = build_config(cmd, f, command);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::string cfg_str = cfg.dump();

    if (f.print_config || (cfg.contains("print_config") && cfg["print_config"].get<bool>())) {
        cfg.erase("print_config");
        char* resolved = nullptr;
        mz_status st = mz_resolve_config(cfg.dump().c_str(), &resolved);
        if (st != MZ_OK) {
            std::cerr << "error: " << mz_last_error() << "\n";
            return 2;
        }
        std::cout << resolved;
        mz_string_free(resolved);
        return 0;
    }

    mz_report* rep = nullptr;
    mz_status st = mz_run_config(cfg_str.c_str(), &rep);
    if (st == MZ_ERR_INVALID_CONFIG || st == MZ_ERR_INVALID_ARGUMENT) {
        std::cerr << "error: " << mz_last_error() << "\n";
        return 2;
    }
    if (st != MZ_OK) {
        std::cerr << "error: " << mz_last_error() << "\n";
        return 1;
    }

    int exit_code = mz_report_passed(rep) ? 0 : 1;
    if (!f.out_json.empty() && !write_file(f.out_json, mz_report_json(rep))) {
        std::cerr << "error: cannot write " << f.out_json << "\n";
        exit_code = 1;
    }
    if (!f.out_csv.empty() && !write_file(f.out_csv, mz_report_summary_csv(rep))) {
        std::cerr << "error: cannot write " << f.out_csv << "\n";
        exit_code = 1;
    }
    std::printf("%s  [%.1fs]\n", mz_report_verdict(rep), mz_report_wall_seconds(rep));
    mz_report_free(rep);
    return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("mzmesh — Marcinkiewicz-Zygmund meshes and Bernstein/Markov "
                             "experiments on C^alpha graph domains (") +
                 mz_version() + ")"};
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"build-mesh", "construct the layered partition and write it as JSON/CSV"},
        {"mz", "two-sided discretization ratios against the quadrature norm"},
        {"bernstein", "weighted tangential Bernstein boundedness in n"},
        {"markov", "tangential Markov exponent via boundary-cap maxima"},
        {"sharpness", "lower-bound exponent from the Jacobi construction"},
        {"lemma73", "one-dimensional weighted discretization inequality"},
        {"osc-check", "per-cell oscillation against the epsilon budget"},
        {"steklov", "Steklov smoothing approximation orders"},
        {"sanity", "classical Chebyshev/ball inequalities"},
    };

    std::vector<Flags> flags(commands.size());
    std::vector<CLI::App*> apps;
    for (std::size_t i = 0; i < commands.size(); ++i) {
        CLI::App* sub = app.add_subcommand(commands[i].first, commands[i].second);
        add_common_flags(sub, flags[i]);
        apps.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t i = 0; i < commands.size(); ++i)
        if (apps[i]->parsed()) return run_command(*apps[i], flags[i], commands[i].first);
    return 2;
}
