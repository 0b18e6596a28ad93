#include "srcdet/estimators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "srcdet/likelihood.hpp"

namespace srcdet {

namespace {

Estimate from_set(EstimatorKind kind, const std::vector<NodeId>& set, const std::vector<double>& value) {
    Estimate e;
    e.kind = kind;
    e.suspects = set;
    std::sort(e.suspects.begin(), e.suspects.end());
    for (NodeId v : e.suspects) {
        e.scores.push_back(value[v]);
    }
    return e;
}

void require_tree(const Snapshot& snap, const char* what) {
    if (!is_tree(snap.graph)) {
        throw GraphError(std::string(what) + " requires a tree snapshot");
    }
}

}  // namespace

std::string estimator_name(EstimatorKind k) {
    switch (k) {
        case EstimatorKind::kRumorCenter:
            return "RUMOR_CENTER";
        case EstimatorKind::kBfsRc:
            return "BFS_RC";
        case EstimatorKind::kMultiEndVertex:
            return "MULTI_END_VERTEX";
        case EstimatorKind::kSdc:
            return "SDC";
        case EstimatorKind::kJordan:
            return "JORDAN";
        case EstimatorKind::kExactMl:
            return "EXACT_ML";
    }
    return "?";
}

EstimatorKind parse_estimator(const std::string& name) {
    std::string up = name;
    std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
    std::replace(up.begin(), up.end(), '-', '_');
    for (auto k : {EstimatorKind::kRumorCenter, EstimatorKind::kBfsRc, EstimatorKind::kMultiEndVertex, EstimatorKind::kSdc,
                   EstimatorKind::kJordan, EstimatorKind::kExactMl}) {
        if (estimator_name(k) == up) {
            return k;
        }
    }
    throw std::invalid_argument("unknown estimator: " + name);
}

BigInt bfs_rumor_denominator(const Graph& g, NodeId v) {
    RootedView rv = bfs_tree(g, v);
    BigInt prod = 1;
    for (std::size_t u = 0; u < g.size(); ++u) {
        prod *= rv.subtree_size[u];
    }
    return prod;
}

namespace {

Estimate bfs_rc(const Snapshot& snap, const EstimatorOptions& opts) {
    const Graph& g = snap.graph;
    const std::size_t n = g.size();
    const double log_fact = std::lgamma(static_cast<double>(n) + 1.0);
    std::vector<double> value(n);
    std::vector<NodeId> best;
    if (opts.bfs_shared_tree) {
        NodeId root = jordan_center(g).front();
        RootedView rv = bfs_tree(g, root);
        std::vector<Edge> edges;
        for (std::size_t u = 0; u < n; ++u) {
            if (rv.parent[u] >= 0) {
                edges.emplace_back(rv.parent[u], static_cast<NodeId>(u));
            }
        }
        ScoreTable t = rumor_centrality_tree(Graph::from_edges(n, edges));
        for (std::size_t u = 0; u < n; ++u) {
            value[u] = t.regime == Regime::kLogReal ? t.value[u] : std::log(t.value[u]);
        }
        return from_set(EstimatorKind::kBfsRc, t.extremum, value);
    }
    BigInt lowest;
    for (std::size_t v = 0; v < n; ++v) {
        BigInt den = bfs_rumor_denominator(g, static_cast<NodeId>(v));
        value[v] = log_fact - log_of(den);
        if (best.empty() || den < lowest) {
            lowest = den;
            best.assign(1, static_cast<NodeId>(v));
        } else if (den == lowest) {
            best.push_back(static_cast<NodeId>(v));
        }
    }
    return from_set(EstimatorKind::kBfsRc, best, value);
}

}  // namespace

Estimate estimate(const Snapshot& snap, EstimatorKind kind, const EstimatorOptions& opts) {
    validate(snap);
    if (snap.size() == 0) {
        throw GraphError("empty snapshot");
    }
    if (!is_connected(snap.graph)) {
        throw GraphError("snapshot is not connected");
    }
    switch (kind) {
        case EstimatorKind::kRumorCenter: {
            require_tree(snap, "RUMOR_CENTER");
            ScoreTable t = rumor_centrality_tree(snap.graph);
            std::vector<double> value = t.value;
            if (t.regime != Regime::kLogReal) {
                for (std::size_t v = 0; v < value.size(); ++v) {
                    value[v] = log_of(numerator(t.exact[v]));
                }
            }
            return from_set(kind, t.extremum, value);
        }
        case EstimatorKind::kBfsRc:
            return bfs_rc(snap, opts);
        case EstimatorKind::kMultiEndVertex:
            return algorithm4_multi_end_vertex(snap);
        case EstimatorKind::kSdc: {
            ScoreTable t = sdc_scores(snap, opts.cycle_cap, opts.sdc_rule);
            return from_set(kind, t.extremum, t.value);
        }
        case EstimatorKind::kJordan: {
            auto ecc = eccentricities(snap.graph);
            return from_set(kind, jordan_center(snap.graph), std::vector<double>(ecc.begin(), ecc.end()));
        }
        case EstimatorKind::kExactMl: {
            LikelihoodTable t = exact_source_likelihood(snap, opts.exact_cap);
            std::vector<double> value;
            for (const auto& p : t.likelihood) {
                value.push_back(to_double(p));
            }
            return from_set(kind, t.argmax, value);
        }
    }
    throw std::logic_error("unhandled estimator");
}

MultiEndVertexTrace algorithm4_trace(const Snapshot& snap) {
    validate(snap);
    require_tree(snap, "MULTI_END_VERTEX");
    const Graph& g = snap.graph;
    const std::size_t n = g.size();
    MultiEndVertexTrace tr;
    tr.center = rumor_center(g).front();
    RootedView rv = rooted_view(g, tr.center);

    // Upward: end vertices per subtree.
    tr.up.assign(n, 0);
    for (auto it = rv.order.rbegin(); it != rv.order.rend(); ++it) {
        NodeId u = *it;
        tr.up[u] += snap.end_vertex[u] ? 1 : 0;
        if (rv.parent[u] >= 0) {
            tr.up[rv.parent[u]] += tr.up[u];
        }
    }

    // Downward: follow every child carrying the maximal positive count.
    tr.in_tree.assign(n, 0);
    std::vector<NodeId> leaves;
    std::vector<NodeId> stack{tr.center};
    tr.in_tree[tr.center] = 1;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        int best = 0;
        for (NodeId c : rv.children[u]) {
            best = std::max(best, tr.up[c]);
        }
        if (best == 0) {
            leaves.push_back(u);
            continue;
        }
        for (NodeId c : rv.children[u]) {
            if (tr.up[c] == best) {
                tr.in_tree[c] = 1;
                stack.push_back(c);
            }
        }
    }

    std::vector<NodeId> kappa{tr.center};
    for (NodeId leaf : leaves) {
        if (rv.parent[leaf] >= 0) {
            kappa.push_back(rv.parent[leaf]);
        }
    }
    std::sort(kappa.begin(), kappa.end());
    kappa.erase(std::unique(kappa.begin(), kappa.end()), kappa.end());
    std::vector<double> value(tr.up.begin(), tr.up.end());
    tr.estimate = from_set(EstimatorKind::kMultiEndVertex, kappa, value);
    return tr;
}

Estimate algorithm4_multi_end_vertex(const Snapshot& snap) { return algorithm4_trace(snap).estimate; }

Estimate top_k_baseline(const Snapshot& snap, int k) {
    validate(snap);
    require_tree(snap, "top_k_baseline");
    const std::size_t n = snap.size();
    if (k < 1 || static_cast<std::size_t>(k) > n) {
        throw std::invalid_argument("top_k_baseline: need 1 <= k <= n");
    }
    ScoreTable t = rumor_centrality_tree(snap.graph);
    const bool exact = t.regime != Regime::kLogReal;
    std::vector<NodeId> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        return exact ? t.exact[a] > t.exact[b] : t.value[a] > t.value[b];
    });
    order.resize(k);
    std::vector<double> value(n);
    for (std::size_t v = 0; v < n; ++v) {
        value[v] = exact ? log_of(numerator(t.exact[v])) : t.value[v];
    }
    Estimate e = from_set(EstimatorKind::kRumorCenter, order, value);
    return e;
}

int estimation_error(const Estimate& est, NodeId truth, const Snapshot& snap) {
    if (truth < 0 || static_cast<std::size_t>(truth) >= snap.size()) {
        throw std::invalid_argument("estimation_error: truth is not in the snapshot");
    }
    if (est.suspects.empty()) {
        throw std::invalid_argument("estimation_error: empty suspect set");
    }
    auto dist = bfs_distances(snap.graph, truth);
    int best = -1;
    for (NodeId v : est.suspects) {
        if (dist[v] != kUnreachable && (best < 0 || dist[v] < best)) {
            best = dist[v];
        }
    }
    if (best < 0) {
        throw GraphError("estimation_error: no suspect is connected to the truth");
    }
    return best;
}

}  // namespace srcdet
