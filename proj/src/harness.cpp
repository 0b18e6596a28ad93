#include "srcdet/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "srcdet/rng.hpp"

namespace srcdet {

using nlohmann::json;

namespace {

constexpr uint64_t kStageGraph = 0;
constexpr uint64_t kStageSource = 1;
constexpr uint64_t kStageSpread = 2;

std::string upper(std::string s) {
    for (char& c : s) {
        c = c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return s;
}

void reject_unknown(const json& j, const std::vector<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) {
        throw ConfigError(where + " must be an object");
    }
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
            throw ConfigError("unknown config key: " + where + "." + it.key());
        }
    }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
    if (j.contains(key)) {
        try {
            out = j.at(key).get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(std::string("bad value for ") + key + ": " + e.what());
        }
    }
}

std::string sdc_rule_name(SdcLeafRule r) { return r == SdcLeafRule::kEndVertex ? "end_vertex" : "snapshot_leaf"; }

double rounded(double x) { return std::stod(format_sig(x)); }

}  // namespace

std::string method_name(const Method& m) { return m.top_k ? "TOP_K" : estimator_name(m.kind); }

Method parse_method(const std::string& name) {
    const std::string u = upper(name);
    if (u == "TOP_K" || u == "TOPK") {
        return {true, EstimatorKind::kRumorCenter};
    }
    if (u == "ALG4") {
        return {false, EstimatorKind::kMultiEndVertex};
    }
    try {
        return {false, parse_estimator(name)};
    } catch (const std::exception&) {
        throw ConfigError("unknown method: " + name);
    }
}

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown(j,
                   {"graph", "graph_file", "regenerate_graph", "spread", "methods", "estimator", "trials", "seed",
                    "threads", "record_timing", "output"},
                   "config");
    ExperimentConfig cfg;
    if (j.contains("graph")) {
        const json& g = j["graph"];
        reject_unknown(g, {"family", "n", "d", "depth", "width", "height", "t", "k", "m", "max_degree", "connections", "seed"},
                       "graph");
        std::string family = family_name(cfg.graph.family);
        read(g, "family", family);
        try {
            cfg.graph.family = parse_family(family);
        } catch (const std::exception& e) {
            throw ConfigError(e.what());
        }
        read(g, "n", cfg.graph.n);
        read(g, "d", cfg.graph.d);
        read(g, "depth", cfg.graph.depth);
        read(g, "width", cfg.graph.width);
        read(g, "height", cfg.graph.height);
        read(g, "t", cfg.graph.t);
        read(g, "k", cfg.graph.k);
        read(g, "m", cfg.graph.m);
        read(g, "max_degree", cfg.graph.max_degree);
        read(g, "connections", cfg.graph.connections);
        read(g, "seed", cfg.graph.seed);
    }
    if (j.contains("graph_file")) {
        std::string path;
        read(j, "graph_file", path);
        cfg.graph_file = path;
    }
    read(j, "regenerate_graph", cfg.regenerate_graph);
    if (j.contains("spread")) {
        const json& s = j["spread"];
        reject_unknown(s, {"n", "end_fraction"}, "spread");
        read(s, "n", cfg.spread_size);
        if (s.contains("end_fraction")) {
            std::vector<long long> f;
            read(s, "end_fraction", f);
            if (f.size() != 2) {
                throw ConfigError("spread.end_fraction must be [num, den]");
            }
            cfg.end_fraction_num = f[0];
            cfg.end_fraction_den = f[1];
        }
    }
    if (j.contains("methods")) {
        std::vector<std::string> names;
        read(j, "methods", names);
        for (const auto& n : names) {
            cfg.methods.push_back(parse_method(n));
        }
    }
    if (j.contains("estimator")) {
        const json& e = j["estimator"];
        reject_unknown(e, {"bfs_shared_tree", "sdc_rule", "cycle_cap", "exact_cap"}, "estimator");
        read(e, "bfs_shared_tree", cfg.estimator.bfs_shared_tree);
        read(e, "cycle_cap", cfg.estimator.cycle_cap);
        read(e, "exact_cap", cfg.estimator.exact_cap);
        if (e.contains("sdc_rule")) {
            std::string r;
            read(e, "sdc_rule", r);
            if (r == "end_vertex") {
                cfg.estimator.sdc_rule = SdcLeafRule::kEndVertex;
            } else if (r == "snapshot_leaf") {
                cfg.estimator.sdc_rule = SdcLeafRule::kSnapshotLeaf;
            } else {
                throw ConfigError("estimator.sdc_rule must be end_vertex or snapshot_leaf");
            }
        }
    }
    read(j, "trials", cfg.trials);
    read(j, "seed", cfg.seed);
    read(j, "threads", cfg.threads);
    read(j, "record_timing", cfg.record_timing);
    read(j, "output", cfg.output_prefix);
    validate(cfg);
    return cfg;
}

// Worker count and output location are left out: they must not change report contents.
std::string config_to_json(const ExperimentConfig& cfg) {
    json j;
    if (cfg.graph_file) {
        j["graph_file"] = *cfg.graph_file;
    } else {
        const GeneratorSpec& g = cfg.graph;
        j["graph"] = {{"family", family_name(g.family)}, {"n", g.n}, {"d", g.d}, {"depth", g.depth},
                      {"width", g.width}, {"height", g.height}, {"t", g.t}, {"k", g.k}, {"m", g.m},
                      {"max_degree", g.max_degree}, {"connections", g.connections}, {"seed", g.seed}};
    }
    j["regenerate_graph"] = cfg.regenerate_graph;
    j["spread"] = {{"n", cfg.spread_size}, {"end_fraction", {cfg.end_fraction_num, cfg.end_fraction_den}}};
    std::vector<std::string> names;
    for (const Method& m : cfg.methods) {
        names.push_back(method_name(m));
    }
    j["methods"] = names;
    j["estimator"] = {{"bfs_shared_tree", cfg.estimator.bfs_shared_tree},
                      {"sdc_rule", sdc_rule_name(cfg.estimator.sdc_rule)},
                      {"cycle_cap", cfg.estimator.cycle_cap},
                      {"exact_cap", cfg.estimator.exact_cap}};
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
    j["record_timing"] = cfg.record_timing;
    return j.dump(2);
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) {
        throw ConfigError("trials must be >= 1");
    }
    if (cfg.spread_size < 1) {
        throw ConfigError("spread.n must be >= 1");
    }
    if (cfg.end_fraction_num < 0 || cfg.end_fraction_den <= 0) {
        throw ConfigError("spread.end_fraction must be non-negative over a positive denominator");
    }
    if (cfg.threads < 0) {
        throw ConfigError("threads must be >= 0");
    }
    if (cfg.regenerate_graph && cfg.graph_file) {
        throw ConfigError("regenerate_graph needs a generator, not a graph file");
    }
}

int resolve_threads(int requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) {
            return static_cast<int>(v);
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

Graph load_graph(const ExperimentConfig& cfg) {
    if (!cfg.graph_file) {
        return generate(cfg.graph);
    }
    std::ifstream in(*cfg.graph_file);
    if (!in) {
        throw std::runtime_error("cannot open graph file: " + *cfg.graph_file);
    }
    return from_edge_list(in).graph;
}

std::vector<ReportRow> run_trial(const ExperimentConfig& cfg, const Graph& shared, int trial) {
    Graph fresh;
    const Graph* g = &shared;
    if (cfg.regenerate_graph) {
        GeneratorSpec spec = cfg.graph;
        spec.seed = derive_seed(cfg.seed, static_cast<uint64_t>(trial), kStageGraph);
        fresh = generate(spec);
        g = &fresh;
    }
    CounterRng pick(derive_seed(cfg.seed, static_cast<uint64_t>(trial), kStageSource));
    const NodeId source = static_cast<NodeId>(pick.below(g->size()));
    StopRule rule;
    rule.target_size = cfg.spread_size;
    rule.end_fraction_num = cfg.end_fraction_num;
    rule.end_fraction_den = cfg.end_fraction_den;
    Snapshot snap = simulate_si(*g, source, rule, derive_seed(cfg.seed, static_cast<uint64_t>(trial), kStageSpread));
    const NodeId truth = snap.infection_order.front();

    std::optional<Estimate> alg4;
    auto multi_end = [&]() -> const Estimate& {
        if (!alg4) {
            alg4 = algorithm4_multi_end_vertex(snap);
        }
        return *alg4;
    };

    std::vector<ReportRow> rows;
    for (const Method& m : cfg.methods) {
        auto start = std::chrono::steady_clock::now();
        Estimate est;
        if (m.top_k) {
            est = top_k_baseline(snap, static_cast<int>(multi_end().suspects.size()));
        } else if (m.kind == EstimatorKind::kMultiEndVertex) {
            est = multi_end();
        } else {
            est = estimate(snap, m.kind, cfg.estimator);
        }
        auto stop = std::chrono::steady_clock::now();
        ReportRow row;
        row.trial = trial;
        row.method = method_name(m);
        row.kappa_size = static_cast<int>(est.suspects.size());
        row.error = estimation_error(est, truth, snap);
        if (cfg.record_timing) {
            row.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    const Graph shared = cfg.regenerate_graph ? Graph() : load_graph(cfg);
    std::vector<std::vector<ReportRow>> per_trial(cfg.trials);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        for (int t = next++; t < cfg.trials; t = next++) {
            try {
                per_trial[t] = run_trial(cfg, shared, t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = cfg.trials;
            }
        }
    };
    const int workers = std::min(resolve_threads(cfg.threads), cfg.trials);
    std::vector<std::thread> pool;
    for (int i = 1; i < workers; ++i) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    ExperimentReport report;
    for (auto& rows : per_trial) {
        report.rows.insert(report.rows.end(), rows.begin(), rows.end());
    }
    report.summary = aggregate(report.rows);
    return report;
}

std::map<std::string, MethodSummary> aggregate(const std::vector<ReportRow>& rows) {
    std::map<std::string, MethodSummary> out;
    std::map<std::string, long long> error_sum, kappa_sum;
    for (const ReportRow& r : rows) {
        MethodSummary& s = out[r.method];
        ++s.trials;
        ++s.histogram[r.error];
        error_sum[r.method] += r.error;
        kappa_sum[r.method] += r.kappa_size;
    }
    for (auto& [name, s] : out) {
        s.mean_error = static_cast<double>(error_sum[name]) / s.trials;
        s.mean_kappa_size = static_cast<double>(kappa_sum[name]) / s.trials;
        auto count = [&](int e) { return s.histogram.count(e) ? s.histogram.at(e) : 0; };
        s.p_error_0 = static_cast<double>(count(0)) / s.trials;
        s.p_error_le_1 = static_cast<double>(count(0) + count(1)) / s.trials;
    }
    return out;
}

std::string report_csv(const std::vector<ReportRow>& rows) {
    std::ostringstream out;
    out << "trial,method,kappa_size,error,runtime_ms\n";
    for (const ReportRow& r : rows) {
        out << r.trial << ',' << r.method << ',' << r.kappa_size << ',' << r.error << ','
            << format_sig(r.runtime_ms) << '\n';
    }
    return out.str();
}

std::string summary_json(const ExperimentConfig& cfg, const std::map<std::string, MethodSummary>& summary) {
    json methods = json::object();
    for (const auto& [name, s] : summary) {
        json hist = json::object();
        for (auto [err, count] : s.histogram) {
            hist[std::to_string(err)] = count;
        }
        methods[name] = {{"trials", s.trials},
                         {"mean_error", rounded(s.mean_error)},
                         {"mean_kappa_size", rounded(s.mean_kappa_size)},
                         {"p_error_0", rounded(s.p_error_0)},
                         {"p_error_le_1", rounded(s.p_error_le_1)},
                         {"histogram", hist}};
    }
    json j;
    j["config"] = json::parse(config_to_json(cfg));
    j["methods"] = methods;
    return j.dump(2) + "\n";
}

std::string histogram_dat(const std::map<std::string, MethodSummary>& summary) {
    std::ostringstream out;
    bool first = true;
    for (const auto& [name, s] : summary) {
        if (!first) {
            out << "\n\n";
        }
        first = false;
        out << "# " << name << "\n";
        for (auto [err, count] : s.histogram) {
            out << err << ' ' << format_sig(static_cast<double>(count) / s.trials) << '\n';
        }
    }
    return out.str();
}

void emit_report(const ExperimentConfig& cfg, const ExperimentReport& report) {
    if (cfg.output_prefix.empty()) {
        throw ConfigError("output prefix is empty");
    }
    auto write = [](const std::string& path, const std::string& text) {
        std::ofstream out(path, std::ios::binary);
        if (!out || !(out << text)) {
            throw std::runtime_error("cannot write " + path);
        }
    };
    write(cfg.output_prefix + ".report.csv", report_csv(report.rows));
    write(cfg.output_prefix + ".summary.json", summary_json(cfg, report.summary));
    write(cfg.output_prefix + ".hist.dat", histogram_dat(report.summary));
}

}  // namespace srcdet
