#include <random>
#include <set>
#include <sstream>

#include "experiments.hpp"

namespace mz {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const std::set<std::string>& allowed_keys() {
    static const std::set<std::string> keys = {
        "command",  "domain", "d",       "alpha",   "n",        "n_list",  "p",
        "epsilon",  "mu",     "beta",    "b",       "seed",     "ensemble", "nodes",
        "c0",       "quad_order", "rel_tol", "out_json", "out_csv", "threads", "force",
        "print_config"};
    return keys;
}

const std::set<std::string>& known_commands() {
    static const std::set<std::string> cmds = {"build-mesh", "mz",      "bernstein",
                                               "markov",     "sharpness", "lemma73",
                                               "osc-check",  "steklov", "sanity"};
    return cmds;
}

template <class T>
T get_or(const json& j, const std::string& key, T def) {
    if (!j.contains(key)) return def;
    try {
        return j.at(key).get<T>();
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' has the wrong type");
    }
}

double model_alpha(const std::string& id) {
    if (id.rfind("alpha:", 0) == 0) return std::stod(id.substr(6));
    return 2.0;  // quad, trig
}

DomainPreset preset_for(const std::string& command) {
    if (command == "bernstein") return DomainPreset::Bernstein;
    if (command == "sharpness") return DomainPreset::Sharpness;
    return DomainPreset::MZ;
}

}  // namespace

ordered_json resolve_config(const json& config) {
    if (!config.is_object()) throw ConfigError("config must be a JSON object");
    for (auto it = config.begin(); it != config.end(); ++it)
        if (!allowed_keys().count(it.key())) throw ConfigError("unknown config key: " + it.key());

    std::string command = get_or<std::string>(config, "command", "");
    if (!known_commands().count(command)) throw ConfigError("unknown or missing command: '" + command + "'");

    ordered_json r;
    r["command"] = command;

    // domain and alpha resolve against each other
    double alpha = get_or<double>(config, "alpha", 0.0);
    std::string domain = get_or<std::string>(config, "domain", "");
    if (domain.empty()) {
        if (alpha > 0.0) {
            std::ostringstream os;
            os << "alpha:" << alpha;
            domain = alpha < 2.0 ? os.str() : "quad";
        } else {
            domain = "alpha:1.5";
        }
    }
    if (!is_model_id(domain)) throw ConfigError("unknown domain id: " + domain);
    if (alpha <= 0.0) alpha = model_alpha(domain);
    if (!(alpha >= 1.0 && alpha <= 2.0)) throw ConfigError("alpha must lie in [1,2]");
    r["domain"] = domain;
    r["alpha"] = alpha;

    int d = get_or<int>(config, "d", 2);
    if (d < 2 || d > 4) throw ConfigError("d must lie in {2,3,4}");
    r["d"] = d;

    std::vector<int> n_list;
    if (config.contains("n_list"))
        n_list = config.at("n_list").get<std::vector<int>>();
    else if (config.contains("n"))
        n_list = {config.at("n").get<int>()};
    else if (command == "sharpness")
        n_list = {8, 16, 32, 64};
    else if (command == "bernstein" || command == "markov")
        n_list = {4, 8, 16, 32};
    else
        n_list = {8};
    for (int n : n_list)
        if (n < 0 || n > 512) throw ConfigError("n out of range [0, 512]");
    r["n_list"] = n_list;

    double p = get_or<double>(config, "p", 2.0);
    if (!(p > 0.0)) throw ConfigError("p must be positive");
    r["p"] = p;

    double epsilon = get_or<double>(config, "epsilon", 0.25);
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw ConfigError("epsilon must lie in (0,1]");
    r["epsilon"] = epsilon;

    double mu = get_or<double>(config, "mu", 2.0);
    if (!(mu > 1.0)) throw ConfigError("mu must exceed 1");
    r["mu"] = mu;

    double beta = get_or<double>(config, "beta", command == "lemma73" ? 0.0 : 2.0 * d + 3.0);
    r["beta"] = beta;
    r["b"] = get_or<int>(config, "b", 0);

    std::uint64_t seed;
    if (config.contains("seed")) {
        seed = config.at("seed").get<std::uint64_t>();
    } else {
        std::random_device rd;
        seed = (std::uint64_t(rd()) << 32) ^ rd();
    }
    r["seed"] = seed;

    int ensemble = get_or<int>(config, "ensemble", command == "osc-check" ? 20 : 50);
    if (ensemble < 1 || ensemble > 100000) throw ConfigError("ensemble out of range");
    r["ensemble"] = ensemble;

    std::string nodes = get_or<std::string>(config, "nodes", "center");
    parse_node_policy(nodes);  // validates
    r["nodes"] = nodes;

    double c0 = get_or<double>(config, "c0", 2.0);
    if (!(c0 > 0.0)) throw ConfigError("c0 must be positive");
    r["c0"] = c0;

    int quad_order = get_or<int>(config, "quad_order", 32);
    if (quad_order < 2 || quad_order > 4096) throw ConfigError("quad_order out of range");
    r["quad_order"] = quad_order;

    double rel_tol = get_or<double>(config, "rel_tol", 1e-7);
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw ConfigError("rel_tol must lie in (0,1)");
    r["rel_tol"] = rel_tol;

    int threads = get_or<int>(config, "threads", 0);
    if (threads <= 0) threads = default_thread_count();
    r["threads"] = threads;

    r["force"] = get_or<bool>(config, "force", false);
    if (config.contains("out_json")) r["out_json"] = config.at("out_json").get<std::string>();
    if (config.contains("out_csv")) r["out_csv"] = config.at("out_csv").get<std::string>();
    return r;
}

ExperimentReport run_from_config(const json& config) {
    ordered_json r = resolve_config(config);
    std::string command = r["command"];
    std::string domain_id = r["domain"];
    int d = r["d"];
    double alpha = r["alpha"];
    std::vector<int> n_list = r["n_list"].get<std::vector<int>>();
    QuadratureSpec quad;
    quad.outer_order = r["quad_order"];
    quad.rel_tol = r["rel_tol"];
    int threads = r["threads"];
    std::uint64_t seed = r["seed"];

    ExperimentReport rep;
    if (command == "build-mesh") {
        GraphDomain dom = make_domain(domain_id, d, DomainPreset::MZ);
        MeshParams mp;
        mp.n = n_list.front();
        mp.epsilon = r["epsilon"];
        mp.alpha = alpha;
        mp.c0 = r["c0"];
        mp.node_policy = parse_node_policy(r["nodes"]);
        mp.seed = seed;
        MZMesh mesh = MZMesh::build(dom, mp, r["force"]);
        rep.id = "build-mesh";
        rep.records.push_back(mesh.to_json());
        double total = mesh.total_measure();
        double expect = dom.inner_box().volume() * 0.25;
        rep.passed = std::abs(total - expect) <= 1e-12 * expect;
        CardinalityInfo card = mesh_cardinality(mp, d);
        std::ostringstream os;
        os << "m=" << mesh.m() << ", cells=" << mesh.cell_count() << ", total measure "
           << csv_num(total);
        rep.summary = {{"m", mesh.m()},
                       {"cells", mesh.cell_count()},
                       {"total_measure", total},
                       {"expected_measure", expect},
                       {"normalized_constant", card.normalized_constant},
                       {"headline", os.str()}};
        // cell table as the CSV artifact
        std::istringstream csv(mesh.to_csv());
        std::string line;
        bool first = true;
        while (std::getline(csv, line)) {
            std::vector<std::string> row;
            std::string cell;
            std::istringstream ls(line);
            while (std::getline(ls, cell, ',')) row.push_back(cell);
            if (first) {
                rep.csv_header = row;
                first = false;
            } else {
                rep.csv_rows.push_back(row);
            }
        }
    } else if (command == "mz") {
        GraphDomain dom = make_domain(domain_id, d, DomainPreset::MZ);
        MzOptions opts;
        opts.n_list = n_list;
        opts.p = r["p"];
        opts.epsilon = r["epsilon"];
        opts.alpha = alpha;
        opts.c0 = r["c0"];
        opts.ensemble = r["ensemble"];
        opts.seed = seed;
        opts.node_policy = parse_node_policy(r["nodes"]);
        opts.force = r["force"];
        opts.quad = quad;
        if (d >= 3) {
            opts.quad.outer_order = std::min<int>(quad.outer_order, 24);
            opts.quad.inner_panels = 16;
            opts.quad.rel_tol = std::max<double>(quad.rel_tol, 1e-4);
        }
        opts.threads = threads;
        rep = mz_experiment(dom, opts);
    } else if (command == "bernstein") {
        GraphDomain dom = make_domain(domain_id, 2, DomainPreset::Bernstein);
        BernsteinOptions opts;
        opts.n_list = n_list;
        opts.p = r["p"];
        opts.alpha = alpha;
        opts.ensemble = r["ensemble"];
        opts.seed = seed;
        opts.quad = quad;
        opts.threads = threads;
        rep = bernstein_experiment(dom, opts);
    } else if (command == "markov") {
        GraphDomain dom = make_domain(domain_id, d, DomainPreset::MZ);
        MarkovOptions opts;
        opts.n_list = n_list;
        opts.p = r["p"];
        opts.alpha = alpha;
        opts.mu = r["mu"];
        opts.ensemble = std::min(r["ensemble"].get<int>(), 16);
        opts.seed = seed;
        opts.threads = threads;
        rep = markov_experiment(dom, opts);
    } else if (command == "sharpness") {
        GraphDomain dom = make_domain(domain_id, d, DomainPreset::Sharpness);
        SharpnessOptions opts;
        opts.n_list = n_list;
        opts.p = r["p"];
        opts.spec.d = d;
        opts.spec.alpha = alpha;
        opts.spec.beta = r["beta"];
        opts.spec.b = r["b"];
        opts.quad = quad;
        opts.threads = threads;
        rep = sharpness_experiment(dom, opts);
    } else if (command == "lemma73") {
        Lemma73Options opts;
        opts.n = n_list.front();
        opts.m = std::max(2 * opts.n, opts.n);
        opts.beta = r["beta"];
        opts.p = r["p"];
        opts.ensemble = std::min(r["ensemble"].get<int>(), 50);
        opts.seed = seed;
        rep = lemma73_check(opts);
    } else if (command == "osc-check") {
        GraphDomain dom = make_domain(domain_id, d, DomainPreset::MZ);
        OscOptions opts;
        opts.n = n_list.front();
        opts.epsilons = {r["epsilon"].get<double>()};
        opts.p = r["p"];
        opts.alpha = alpha;
        opts.c0 = r["c0"];
        opts.ensemble = r["ensemble"];
        opts.seed = seed;
        opts.quad = quad;
        opts.threads = threads;
        rep = cell_oscillation_check(dom, opts);
    } else if (command == "steklov") {
        AlphaGraphFunction g = make_model_function(domain_id, 2);
        SteklovOptions opts;
        rep = steklov_experiment(g, opts);
    } else if (command == "sanity") {
        rep = classical_sanity_suite(seed, std::min(r["ensemble"].get<int>(), 50));
    }

    // attach the fully resolved config (minus IO paths) as the echo
    ordered_json echo = r;
    echo.erase("out_json");
    echo.erase("out_csv");
    rep.config = std::move(echo);
    return rep;
}

}  // namespace mz
