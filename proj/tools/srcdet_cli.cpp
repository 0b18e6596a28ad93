#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "srcdet/asymptotics.hpp"
#include "srcdet/estimators.hpp"
#include "srcdet/generators.hpp"
#include "srcdet/harness.hpp"
#include "srcdet/likelihood.hpp"
#include "srcdet/rng.hpp"
#include "srcdet/spread.hpp"
#include "srcdet/vaccine.hpp"

using namespace srcdet;

namespace {

struct GraphArgs {
    std::string file;
    std::string family;
    GeneratorSpec spec;
};

void add_graph_options(CLI::App* app, GraphArgs& a) {
    app->add_option("--graph", a.file, "edge-list file");
    app->add_option("--family", a.family,
                    "line, regular_tree, broom, star, grid, circulant, random_regular, barabasi_albert, "
                    "random_bounded_degree_tree");
    app->add_option("--n", a.spec.n, "node count");
    app->add_option("--d", a.spec.d, "degree");
    app->add_option("--depth", a.spec.depth, "regular_tree depth");
    app->add_option("--width", a.spec.width, "grid width");
    app->add_option("--height", a.spec.height, "grid height");
    app->add_option("--t", a.spec.t, "broom: line of 2t nodes");
    app->add_option("--k", a.spec.k, "broom: pendant count");
    app->add_option("--m", a.spec.m, "barabasi_albert attachments");
    app->add_option("--max-degree", a.spec.max_degree, "random_bounded_degree_tree d_m");
    app->add_option("--connections", a.spec.connections, "circulant offsets")->delimiter(',');
    app->add_option("--graph-seed", a.spec.seed, "generator seed");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        throw std::runtime_error("cannot write " + path);
    }
}

EdgeListResult load_graph(const GraphArgs& a) {
    if (!a.file.empty()) {
        return from_edge_list(read_file(a.file));
    }
    if (a.family.empty()) {
        throw CLI::ValidationError("graph", "give --graph FILE or --family");
    }
    GeneratorSpec spec = a.spec;
    spec.family = parse_family(a.family);
    EdgeListResult r{generate(spec), {}};
    for (std::size_t v = 0; v < r.graph.size(); ++v) {
        r.original_ids.push_back(static_cast<long long>(v));
    }
    return r;
}

std::string fixed6(long double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6Lf", x);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Contagion source detection toolkit"};
    app.require_subcommand(1);
    app.fallthrough(false);

    // generate
    GraphArgs gen;
    std::string gen_out;
    auto* generate_cmd = app.add_subcommand("generate", "Write a generated graph as an edge list");
    add_graph_options(generate_cmd, gen);
    generate_cmd->add_option("--out", gen_out, "output file (default stdout)");

    // spread
    GraphArgs sp;
    int sp_size = 0;
    long long sp_source = -1;
    uint64_t sp_seed = 0;
    std::vector<long long> sp_fraction{1, 1};
    std::string sp_out;
    auto* spread_cmd = app.add_subcommand("spread", "Simulate SI spreading and write a snapshot");
    add_graph_options(spread_cmd, sp);
    spread_cmd->add_option("--size", sp_size, "infected nodes to reach")->required()->check(CLI::PositiveNumber);
    spread_cmd->add_option("--source", sp_source, "source node (default: uniform from seed)");
    spread_cmd->add_option("--seed", sp_seed, "spread seed");
    spread_cmd->add_option("--end-fraction", sp_fraction, "stop when end vertices reach num,den of size")
        ->delimiter(',')
        ->expected(2);
    spread_cmd->add_option("--out", sp_out, "snapshot JSON path (default stdout)");

    // estimate
    std::string est_method, est_snapshot;
    int est_k = 0;
    bool est_shared = false;
    auto* estimate_cmd = app.add_subcommand("estimate", "Estimate the source of a snapshot");
    estimate_cmd->add_option("--method", est_method, "RUMOR_CENTER, BFS_RC, MULTI_END_VERTEX, SDC, JORDAN, EXACT_ML, TOP_K")
        ->required();
    estimate_cmd->add_option("--snapshot", est_snapshot, "snapshot JSON")->required();
    estimate_cmd->add_option("--k", est_k, "TOP_K set size")->check(CLI::PositiveNumber);
    estimate_cmd->add_flag("--bfs-shared-tree", est_shared, "BFS_RC: one tree rooted at the Jordan center");

    // likelihood
    std::string lk_model = "exact", lk_snapshot, lk_format = "json";
    int lk_cap = kEnumerationCap, lk_d = 0, lk_n = 0, lk_t = 0, lk_k = 0;
    auto* likelihood_cmd = app.add_subcommand("likelihood", "Exact source likelihood table");
    likelihood_cmd->add_option("--model", lk_model, "exact, pseudo_tree, line, broom")
        ->check(CLI::IsMember({"exact", "pseudo_tree", "line", "broom"}));
    likelihood_cmd->add_option("--snapshot", lk_snapshot, "snapshot JSON (exact, pseudo_tree)");
    likelihood_cmd->add_option("--cap", lk_cap, "node cap for exact enumeration (<= 24)")->check(CLI::Range(1, 24));
    likelihood_cmd->add_option("--d", lk_d, "underlying degree (line, broom)");
    likelihood_cmd->add_option("--n", lk_n, "line length");
    likelihood_cmd->add_option("--t", lk_t, "broom half length");
    likelihood_cmd->add_option("--k", lk_k, "broom end vertices");
    likelihood_cmd->add_option("--format", lk_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    // asymptotics
    auto* asym_cmd = app.add_subcommand("asymptotics", "Rumor-center detection probabilities");
    asym_cmd->require_subcommand(1);
    int ax_d = 3;
    long long ax_n = 0, ax_n_max = 0, ax_step = 1;
    bool ax_half = false, ax_float = false, ax_rational = false;
    auto* exact_cmd = asym_cmd->add_subcommand("exact", "Finite-n detection probability (table with --n-max)");
    exact_cmd->add_option("--d", ax_d, "degree")->required()->check(CLI::Range(2, 1 << 30));
    exact_cmd->add_option("--n", ax_n, "spread size")->required()->check(CLI::PositiveNumber);
    exact_cmd->add_option("--n-max", ax_n_max, "last n of a table");
    exact_cmd->add_option("--step", ax_step, "table step")->check(CLI::PositiveNumber);
    exact_cmd->add_flag("--tie-half", ax_half, "count a tied rumor center as 1/2");
    exact_cmd->add_flag("--float", ax_float, "floating-point evaluation");
    exact_cmd->add_flag("--rational", ax_rational, "also print the exact fraction");
    int al_d = 3, al_d_max = 0;
    auto* limit_cmd = asym_cmd->add_subcommand("limit", "n -> infinity detection probability (table with --d-max)");
    limit_cmd->add_option("--d", al_d, "degree")->required()->check(CLI::Range(3, 1 << 30));
    limit_cmd->add_option("--d-max", al_d_max, "last d of a table");

    // urn
    int urn_d = 3, urn_n = 0, urn_samples = 0;
    uint64_t urn_seed = 0;
    std::vector<long long> urn_outcome;
    auto* urn_cmd = app.add_subcommand("urn", "Branch-size urn: joint pmf or samples");
    urn_cmd->add_option("--d", urn_d, "degree")->required()->check(CLI::Range(3, 1 << 20));
    urn_cmd->add_option("--n", urn_n, "spread size")->required()->check(CLI::PositiveNumber);
    auto* outcome_opt = urn_cmd->add_option("--outcome", urn_outcome, "branch sizes x_1,...,x_d")->delimiter(',');
    auto* samples_opt = urn_cmd->add_option("--samples", urn_samples, "draw this many samples")->check(CLI::PositiveNumber);
    urn_cmd->add_option("--seed", urn_seed, "sampling seed");
    outcome_opt->excludes(samples_opt);

    // vaccine
    GraphArgs vc;
    int vc_k = 1;
    std::string vc_method = "vaccine_centrality";
    bool vc_bounds = false;
    long long vc_root = -1;
    auto* vaccine_cmd = app.add_subcommand("vaccine", "Choose k protection nodes");
    add_graph_options(vaccine_cmd, vc);
    vaccine_cmd->remove_option(vaccine_cmd->get_option("--k"));
    vaccine_cmd->add_option("--k", vc_k, "nodes to protect")->required();
    vaccine_cmd->add_option("--method", vc_method, "vaccine_centrality, brute_force, degree")
        ->check(CLI::IsMember({"vaccine_centrality", "brute_force", "degree"}));
    vaccine_cmd->add_flag("--bounds", vc_bounds, "include the bound chain (trees)");
    vaccine_cmd->add_option("--bfs-root", vc_root, "spanning-tree root for graphs with cycles");

    // experiment
    std::string ex_config, ex_out, ex_methods;
    int ex_trials = 0, ex_threads = 0, ex_n = 0;
    uint64_t ex_seed = 0;
    bool ex_timing = false;
    auto* experiment_cmd = app.add_subcommand("experiment", "Batch source-detection experiment");
    experiment_cmd->add_option("--config", ex_config, "config JSON");
    auto* trials_opt = experiment_cmd->add_option("--trials", ex_trials, "trial count");
    auto* seed_opt = experiment_cmd->add_option("--seed", ex_seed, "master seed");
    experiment_cmd->add_option("--threads", ex_threads, "worker count")->check(CLI::PositiveNumber);
    auto* n_opt = experiment_cmd->add_option("--n", ex_n, "spread size");
    experiment_cmd->add_option("--methods", ex_methods, "comma-separated methods");
    experiment_cmd->add_option("--out", ex_out, "output prefix");
    experiment_cmd->add_flag("--record-timing", ex_timing, "record runtime_ms");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        std::cerr << app.help();
        return 1;
    }

    try {
        if (generate_cmd->parsed()) {
            std::ostringstream s;
            write_edge_list(s, load_graph(gen).graph);
            write_output(gen_out, s.str());
        } else if (spread_cmd->parsed()) {
            Graph g = load_graph(sp).graph;
            NodeId source = static_cast<NodeId>(sp_source);
            if (sp_source < 0) {
                CounterRng pick(derive_seed(sp_seed, 0, 1));
                source = static_cast<NodeId>(pick.below(g.size()));
            }
            StopRule rule;
            rule.target_size = sp_size;
            rule.end_fraction_num = sp_fraction[0];
            rule.end_fraction_den = sp_fraction[1];
            write_output(sp_out, snapshot_to_json(simulate_si(g, source, rule, derive_seed(sp_seed, 0, 2))) + "\n");
        } else if (estimate_cmd->parsed()) {
            Snapshot snap = snapshot_from_json(read_file(est_snapshot));
            Method m = parse_method(est_method);
            Estimate est;
            if (m.top_k) {
                if (est_k < 1) {
                    throw CLI::ValidationError("--k", "TOP_K needs --k");
                }
                est = top_k_baseline(snap, est_k);
            } else {
                EstimatorOptions opts;
                opts.bfs_shared_tree = est_shared;
                est = estimate(snap, m.kind, opts);
            }
            nlohmann::ordered_json j;
            j["method"] = method_name(m);
            j["suspects"] = est.suspects;
            j["scores"] = est.scores;
            if (!snap.global_ids.empty()) {
                std::vector<NodeId> global;
                for (NodeId v : est.suspects) {
                    global.push_back(snap.global_ids[v]);
                }
                j["global_suspects"] = global;
            }
            std::cout << j.dump(2) << "\n";
        } else if (likelihood_cmd->parsed()) {
            LikelihoodTable t;
            std::vector<NodeId> ids;
            if (lk_model == "line") {
                t = line_likelihood(lk_d, lk_n);
            } else if (lk_model == "broom") {
                t = broom_likelihood(lk_d, lk_t, lk_k);
            } else {
                if (lk_snapshot.empty()) {
                    throw CLI::ValidationError("--snapshot", "required for this model");
                }
                Snapshot snap = snapshot_from_json(read_file(lk_snapshot));
                t = lk_model == "exact" ? exact_source_likelihood(snap, lk_cap) : pseudo_tree_likelihood(snap);
                ids = snap.global_ids;
            }
            std::cout << (lk_format == "csv" ? likelihood_to_csv(t, ids) : likelihood_to_json(t, ids) + "\n");
        } else if (exact_cmd->parsed()) {
            const TieRule tie = ax_half ? TieRule::kHalf : TieRule::kFull;
            const long long last = std::max(ax_n, ax_n_max);
            const bool table = ax_n_max > 0;
            for (long long n = ax_n; n <= last; n += ax_step) {
                DetectionProb p = detection_prob_exact(ax_d, n, tie, !ax_float);
                if (table) {
                    std::cout << n << ' ';
                }
                std::cout << fixed6(p.value);
                if (ax_rational && p.exact) {
                    std::cout << ' ' << to_string(*p.exact);
                }
                std::cout << '\n';
            }
        } else if (limit_cmd->parsed()) {
            if (al_d_max > 0) {
                for (int d = al_d; d <= al_d_max; ++d) {
                    std::cout << d << ' ' << fixed6(detection_prob_limit(d)) << '\n';
                }
            } else {
                std::cout << fixed6(detection_prob_limit(al_d)) << '\n';
            }
        } else if (urn_cmd->parsed()) {
            UrnSpec spec = spreading_urn(urn_d, urn_n);
            if (!urn_outcome.empty()) {
                std::cout << to_string(urn_joint_pmf(spec, urn_outcome)) << '\n';
            } else if (urn_samples > 0) {
                for (int s = 0; s < urn_samples; ++s) {
                    auto x = urn_sample(spec, derive_seed(urn_seed, static_cast<uint64_t>(s)));
                    for (std::size_t i = 0; i < x.size(); ++i) {
                        std::cout << (i ? "," : "") << x[i];
                    }
                    std::cout << '\n';
                }
            } else {
                throw CLI::ValidationError("urn", "give --outcome or --samples");
            }
        } else if (vaccine_cmd->parsed()) {
            EdgeListResult in = load_graph(vc);
            if (vc_k < 1 || static_cast<std::size_t>(vc_k) > in.graph.size()) {
                throw CLI::ValidationError("--k", "must be between 1 and the node count");
            }
            ProtectionSet set;
            if (vc_method == "brute_force") {
                set = brute_force_protection(in.graph, vc_k);
            } else if (vc_method == "degree") {
                set = degree_heuristic_protection(in.graph, vc_k);
            } else {
                ProtectionOptions opts;
                if (vc_root >= 0) {
                    opts.bfs_root = static_cast<NodeId>(vc_root);
                }
                set = select_protection_set(in.graph, vc_k, opts);
            }
            std::optional<BoundReport> bounds;
            if (vc_bounds) {
                bounds = bound_check(in.graph);
            }
            std::cout << protection_report_json(in.graph, set, bounds, in.original_ids) << "\n";
        } else if (experiment_cmd->parsed()) {
            ExperimentConfig cfg = ex_config.empty() ? ExperimentConfig{} : parse_config(read_file(ex_config));
            if (*trials_opt) {
                cfg.trials = ex_trials;
            }
            if (*seed_opt) {
                cfg.seed = ex_seed;
            }
            if (*n_opt) {
                cfg.spread_size = ex_n;
            }
            if (ex_threads > 0) {
                cfg.threads = ex_threads;
            }
            if (!ex_methods.empty()) {
                cfg.methods.clear();
                std::stringstream s(ex_methods);
                for (std::string name; std::getline(s, name, ',');) {
                    cfg.methods.push_back(parse_method(name));
                }
            }
            if (!ex_out.empty()) {
                cfg.output_prefix = ex_out;
            }
            cfg.record_timing = cfg.record_timing || ex_timing;
            if (cfg.methods.empty()) {
                throw ConfigError("no methods given");
            }
            validate(cfg);
            ExperimentReport report = run_experiment(cfg);
            if (cfg.output_prefix.empty()) {
                std::cout << summary_json(cfg, report.summary);
            } else {
                emit_report(cfg, report);
            }
        }
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
