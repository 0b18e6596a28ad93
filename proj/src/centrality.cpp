#include "srcdet/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace srcdet {

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::kExactRational: return "exact_rational";
        case Regime::kBigInteger: return "big_integer";
        case Regime::kLogReal: return "log_real";
        case Regime::kReal: return "real";
    }
    return "unknown";
}

bool ScoreTable::is_extremum(NodeId v) const { return std::binary_search(extremum.begin(), extremum.end(), v); }

ScoreTable make_exact_table(std::vector<Rational> scores, Extremum kind, Regime regime) {
    ScoreTable t;
    t.regime = regime;
    t.kind = kind;
    t.exact = std::move(scores);
    t.value.reserve(t.exact.size());
    for (const auto& s : t.exact) {
        t.value.push_back(to_double(s));
    }
    if (t.exact.empty()) {
        return t;
    }
    const Rational* best = &t.exact[0];
    for (const auto& s : t.exact) {
        if (kind == Extremum::kArgmax ? s > *best : s < *best) {
            best = &s;
        }
    }
    for (std::size_t v = 0; v < t.exact.size(); ++v) {
        if (t.exact[v] == *best) {
            t.extremum.push_back(static_cast<NodeId>(v));
        }
    }
    return t;
}

ScoreTable make_real_table(std::vector<double> scores, Extremum kind, Regime regime, double tolerance) {
    ScoreTable t;
    t.regime = regime;
    t.kind = kind;
    t.tolerance = tolerance;
    t.value = std::move(scores);
    if (t.value.empty()) {
        return t;
    }
    double best = kind == Extremum::kArgmax ? *std::max_element(t.value.begin(), t.value.end())
                                            : *std::min_element(t.value.begin(), t.value.end());
    for (std::size_t v = 0; v < t.value.size(); ++v) {
        if (std::abs(t.value[v] - best) <= tolerance) {
            t.extremum.push_back(static_cast<NodeId>(v));
        }
    }
    return t;
}

namespace {

void require_tree(const Graph& g, const char* what) {
    if (!is_tree(g)) {
        throw GraphError(std::string(what) + " requires a tree");
    }
}

void require_connected(const Graph& g, const char* what) {
    if (g.size() == 0 || !is_connected(g)) {
        throw GraphError(std::string(what) + " requires a connected graph");
    }
}

}  // namespace

ScoreTable distance_centrality(const Graph& g) {
    require_connected(g, "distance_centrality");
    std::size_t n = g.size();
    std::vector<Rational> scores(n);
    if (is_tree(g)) {
        // DisC(child) = DisC(parent) - t_child + (n - t_child).
        auto view = rooted_view(g, 0);
        auto dist = bfs_distances(g, 0);
        long long root_sum = std::accumulate(dist.begin(), dist.end(), 0LL);
        std::vector<long long> disc(n, 0);
        disc[0] = root_sum;
        for (NodeId u : view.order) {
            if (u != 0) {
                long long t = view.subtree_size[u];
                disc[u] = disc[view.parent[u]] - t + (static_cast<long long>(n) - t);
            }
        }
        for (std::size_t v = 0; v < n; ++v) {
            scores[v] = disc[v];
        }
    } else {
        for (std::size_t v = 0; v < n; ++v) {
            auto dist = bfs_distances(g, static_cast<NodeId>(v));
            scores[v] = std::accumulate(dist.begin(), dist.end(), 0LL);
        }
    }
    return make_exact_table(std::move(scores), Extremum::kArgmin, Regime::kBigInteger);
}

ScoreTable betweenness_centrality(const Graph& g) {
    require_connected(g, "betweenness_centrality");
    std::size_t n = g.size();
    bool exact = n <= static_cast<std::size_t>(kExactBetweennessLimit);
    std::vector<Rational> bq(exact ? n : 0, 0);
    std::vector<double> bd(exact ? 0 : n, 0.0);
    std::vector<NodeId> stack;
    std::vector<int> dist(n);
    for (std::size_t s = 0; s < n; ++s) {
        // Brandes accumulation from source s.
        std::fill(dist.begin(), dist.end(), kUnreachable);
        stack.clear();
        std::vector<BigInt> sigma_q(exact ? n : 0, 0);
        std::vector<double> sigma_d(exact ? 0 : n, 0.0);
        dist[s] = 0;
        if (exact) {
            sigma_q[s] = 1;
        } else {
            sigma_d[s] = 1.0;
        }
        std::vector<NodeId> queue{static_cast<NodeId>(s)};
        for (std::size_t head = 0; head < queue.size(); ++head) {
            NodeId u = queue[head];
            stack.push_back(u);
            for (NodeId w : g.neighbors(u)) {
                if (dist[w] == kUnreachable) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[u] + 1) {
                    if (exact) {
                        sigma_q[w] += sigma_q[u];
                    } else {
                        sigma_d[w] += sigma_d[u];
                    }
                }
            }
        }
        std::vector<Rational> delta_q(exact ? n : 0, 0);
        std::vector<double> delta_d(exact ? 0 : n, 0.0);
        for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            NodeId w = *it;
            for (NodeId u : g.neighbors(w)) {
                if (dist[u] == dist[w] - 1) {
                    if (exact) {
                        delta_q[u] += Rational(sigma_q[u], sigma_q[w]) * (1 + delta_q[w]);
                    } else {
                        delta_d[u] += sigma_d[u] / sigma_d[w] * (1.0 + delta_d[w]);
                    }
                }
            }
            if (w != static_cast<NodeId>(s)) {
                if (exact) {
                    bq[w] += delta_q[w];
                } else {
                    bd[w] += delta_d[w];
                }
            }
        }
    }
    // Each unordered pair was counted from both ends.
    if (exact) {
        for (auto& b : bq) {
            b /= 2;
        }
        return make_exact_table(std::move(bq), Extremum::kArgmax);
    }
    for (auto& b : bd) {
        b /= 2.0;
    }
    return make_real_table(std::move(bd), Extremum::kArgmax, Regime::kReal, 1e-9);
}

int MessageField::message(const Graph& g, NodeId from, NodeId to) const {
    const auto& nb = g.neighbors(from);
    auto it = std::lower_bound(nb.begin(), nb.end(), to);
    if (it == nb.end() || *it != to) {
        throw GraphError("message requested along a non-edge");
    }
    return out[from][static_cast<std::size_t>(it - nb.begin())];
}

CentroidResult centroid_by_message_passing(const Graph& g, NodeId root) {
    require_tree(g, "centroid_by_message_passing");
    std::size_t n = g.size();
    int total = static_cast<int>(n);
    auto view = rooted_view(g, root);
    CentroidResult r;
    r.messages.out.resize(n);
    // Upward messages are subtree sizes; the downward message is the complement.
    for (std::size_t v = 0; v < n; ++v) {
        for (NodeId w : g.neighbors(static_cast<NodeId>(v))) {
            if (view.parent[v] == w) {
                r.messages.out[v].push_back(view.subtree_size[v]);
            } else {
                r.messages.out[v].push_back(total - view.subtree_size[w]);
            }
        }
    }
    std::vector<Rational> weight(n);
    for (std::size_t v = 0; v < n; ++v) {
        int w = 0;
        for (NodeId u : g.neighbors(static_cast<NodeId>(v))) {
            w = std::max(w, r.messages.message(g, u, static_cast<NodeId>(v)));
        }
        weight[v] = w;
    }
    // Walk away from the root while some branch holds more than half the nodes;
    // Diff = |2M - N| shrinks along this walk.
    NodeId v = root;
    while (true) {
        NodeId next = -1;
        for (NodeId c : view.children[v]) {
            if (2 * view.subtree_size[c] > total) {
                next = c;
            }
        }
        if (next < 0) {
            break;
        }
        v = next;
    }
    r.centroids.push_back(v);
    for (NodeId c : view.children[v]) {
        if (2 * view.subtree_size[c] == total) {
            r.centroids.push_back(c);
        }
    }
    if (view.parent[v] >= 0 && 2 * (total - view.subtree_size[v]) == total) {
        r.centroids.push_back(view.parent[v]);
    }
    std::sort(r.centroids.begin(), r.centroids.end());
    r.weights = make_exact_table(std::move(weight), Extremum::kArgmin, Regime::kBigInteger);
    return r;
}

ScoreTable rumor_centrality_tree(const Graph& g, bool force_log) {
    require_tree(g, "rumor_centrality_tree");
    std::size_t n = g.size();
    auto view = rooted_view(g, 0);
    if (n <= static_cast<std::size_t>(kExactRumorLimit) && !force_log) {
        // R(root) = n! / prod t_u; R(child) = R(parent) * t_child / (n - t_child).
        BigInt denom = 1;
        for (std::size_t v = 0; v < n; ++v) {
            denom *= view.subtree_size[v];
        }
        std::vector<BigInt> r(n);
        r[0] = factorial(static_cast<unsigned>(n)) / denom;
        for (NodeId u : view.order) {
            if (u != 0) {
                long long t = view.subtree_size[u];
                r[u] = r[view.parent[u]] * t / (static_cast<long long>(n) - t);
            }
        }
        std::vector<Rational> scores(r.begin(), r.end());
        return make_exact_table(std::move(scores), Extremum::kArgmax, Regime::kBigInteger);
    }
    std::vector<double> logr(n);
    double root = std::lgamma(static_cast<double>(n) + 1.0);
    for (std::size_t v = 0; v < n; ++v) {
        root -= std::log(static_cast<double>(view.subtree_size[v]));
    }
    logr[0] = root;
    for (NodeId u : view.order) {
        if (u != 0) {
            double t = view.subtree_size[u];
            logr[u] = logr[view.parent[u]] + std::log(t) - std::log(static_cast<double>(n) - t);
        }
    }
    return make_real_table(std::move(logr), Extremum::kArgmax, Regime::kLogReal, 1e-9);
}

std::vector<NodeId> rumor_center(const Graph& g) {
    require_tree(g, "rumor_center");
    std::size_t n = g.size();
    auto view = rooted_view(g, 0);
    std::vector<NodeId> out;
    for (std::size_t v = 0; v < n; ++v) {
        int largest = view.parent[v] >= 0 ? static_cast<int>(n) - view.subtree_size[v] : 0;
        for (NodeId c : view.children[v]) {
            largest = std::max(largest, view.subtree_size[c]);
        }
        if (2 * largest <= static_cast<int>(n)) {
            out.push_back(static_cast<NodeId>(v));
        }
    }
    return out;
}

EpidemicResult epidemic_centrality_unicyclic(const Graph& g) {
    std::vector<NodeId> cycle = unicyclic_cycle(g);
    std::size_t n = g.size();
    std::size_t h = cycle.size();
    std::vector<int> cycle_index(n, -1);
    for (std::size_t i = 0; i < h; ++i) {
        cycle_index[cycle[i]] = static_cast<int>(i);
    }
    // Trees hanging off the cycle: t[i] is the size of cycle vertex i's tree, s[u] the
    // size of u's subtree away from the cycle, up[u] its neighbour toward the cycle.
    std::vector<int> s(n, 0);
    std::vector<NodeId> up(n, -1);
    std::vector<long long> t(h, 0);
    std::vector<NodeId> order;
    for (std::size_t i = 0; i < h; ++i) {
        std::vector<NodeId> local{cycle[i]};
        for (std::size_t head = 0; head < local.size(); ++head) {
            NodeId u = local[head];
            for (NodeId w : g.neighbors(u)) {
                if (cycle_index[w] < 0 && w != up[u]) {
                    up[w] = u;
                    local.push_back(w);
                }
            }
        }
        for (auto it = local.rbegin(); it != local.rend(); ++it) {
            s[*it] += 1;
            if (up[*it] >= 0) {
                s[up[*it]] += s[*it];
            }
        }
        t[i] = s[cycle[i]];
        order.insert(order.end(), local.begin(), local.end());
    }

    Rational k = factorial(static_cast<unsigned>(n - 1));
    for (std::size_t u = 0; u < n; ++u) {
        if (cycle_index[u] < 0) {
            k /= s[u];
        }
    }

    std::vector<Rational> score(n, 0);
    // Removing cycle edge (c_q, c_{q+1}) leaves the path c_{q+1}, ..., c_q.
    for (std::size_t q = 0; q < h; ++q) {
        std::vector<long long> path_t(h);
        std::vector<std::size_t> pos(h);
        for (std::size_t j = 0; j < h; ++j) {
            std::size_t idx = (q + 1 + j) % h;
            path_t[j] = t[idx];
            pos[idx] = j;
        }
        std::vector<long long> prefix(h + 1, 0);
        for (std::size_t j = 0; j < h; ++j) {
            prefix[j + 1] = prefix[j] + path_t[j];
        }
        for (std::size_t i = 0; i < h; ++i) {
            std::size_t p = pos[i];
            BigInt prod = 1;
            for (std::size_t j = 0; j < p; ++j) {
                prod *= prefix[j + 1];
            }
            for (std::size_t j = p + 1; j < h; ++j) {
                prod *= prefix[h] - prefix[j];
            }
            score[cycle[i]] += k / Rational(prod);
        }
    }
    // Bridges split every spanning tree the same way.
    for (NodeId u : order) {
        if (cycle_index[u] < 0) {
            long long su = s[u];
            score[u] = score[up[u]] * Rational(su, static_cast<long long>(n) - su);
        }
    }

    EpidemicResult r;
    r.table = make_exact_table(std::move(score), Extremum::kArgmax, Regime::kBigInteger);
    // Branch condition first: a vertex whose removal leaves components of size <= n/2.
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<char> seen(n, 0);
        seen[v] = 1;
        bool ok = true;
        for (NodeId c : g.neighbors(static_cast<NodeId>(v))) {
            if (seen[c]) {
                continue;
            }
            std::size_t size = 0;
            std::vector<NodeId> stack{c};
            seen[c] = 1;
            while (!stack.empty()) {
                NodeId u = stack.back();
                stack.pop_back();
                ++size;
                for (NodeId w : g.neighbors(u)) {
                    if (!seen[w]) {
                        seen[w] = 1;
                        stack.push_back(w);
                    }
                }
            }
            if (2 * size > n) {
                ok = false;
                break;
            }
        }
        if (ok) {
            r.center.push_back(static_cast<NodeId>(v));
        }
    }
    if (!r.center.empty()) {
        r.resolved_by_branch_condition = true;
    } else {
        // Step 4: the best cycle vertex from the ratio table.
        Rational best = -1;
        for (NodeId c : cycle) {
            best = std::max(best, r.table.exact[c]);
        }
        for (NodeId c : cycle) {
            if (r.table.exact[c] == best) {
                r.center.push_back(c);
            }
        }
        std::sort(r.center.begin(), r.center.end());
    }
    return r;
}

ScoreTable epidemic_centrality_by_spanning_trees(const Graph& g) {
    std::size_t n = g.size();
    std::vector<Rational> score(n, 0);
    for (const Graph& tree : spanning_trees_unicyclic(g)) {
        ScoreTable r = rumor_centrality_tree(tree);
        for (std::size_t v = 0; v < n; ++v) {
            score[v] += r.exact[v];
        }
    }
    return make_exact_table(std::move(score), Extremum::kArgmax, Regime::kBigInteger);
}

std::vector<int> eccentricities(const Graph& g) {
    require_connected(g, "eccentricities");
    std::vector<int> ecc(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) {
        auto d = bfs_distances(g, static_cast<NodeId>(v));
        ecc[v] = *std::max_element(d.begin(), d.end());
    }
    return ecc;
}

std::vector<NodeId> jordan_center(const Graph& g) {
    auto ecc = eccentricities(g);
    int best = *std::min_element(ecc.begin(), ecc.end());
    std::vector<NodeId> out;
    for (std::size_t v = 0; v < ecc.size(); ++v) {
        if (ecc[v] == best) {
            out.push_back(static_cast<NodeId>(v));
        }
    }
    return out;
}

std::vector<Rational> sdc_weights(const Snapshot& snap, int cap, SdcLeafRule rule) {
    std::size_t n = snap.size();
    std::vector<Rational> w(n, 1);
    for (std::size_t v = 0; v < n; ++v) {
        if (snap.end_vertex[v]) {
            w[v] = Rational(1, 2);
            continue;
        }
        if (snap.graph.degree(static_cast<NodeId>(v)) == 0) {
            continue;
        }
        CycleSize c = minimum_chordless_cycle_size(snap.graph, static_cast<NodeId>(v), cap);
        if (c.kind == CycleSize::Kind::kLeaf) {
            if (rule == SdcLeafRule::kSnapshotLeaf) {
                w[v] = Rational(1, 2);
            }
        } else if (c.kind == CycleSize::Kind::kCycle) {
            w[v] = Rational(c.size, c.size + 1);
        }
    }
    return w;
}

ScoreTable sdc_scores(const Snapshot& snap, int cap, SdcLeafRule rule) {
    if (snap.size() == 0 || !is_connected(snap.graph)) {
        throw GraphError("sdc_scores requires a connected snapshot");
    }
    auto w = sdc_weights(snap, cap, rule);
    std::size_t n = snap.size();
    // Weights are k/(k+1) with small k, so the common denominator stays small.
    BigInt common = 1;
    for (const auto& x : w) {
        BigInt den = boost::multiprecision::denominator(x);
        common = common / boost::multiprecision::gcd(common, den) * den;
    }
    std::vector<BigInt> wi(n);
    for (std::size_t v = 0; v < n; ++v) {
        wi[v] = boost::multiprecision::numerator(w[v]) * (common / boost::multiprecision::denominator(w[v]));
    }
    std::vector<Rational> scores(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto d = bfs_distances(snap.graph, static_cast<NodeId>(v));
        BigInt sum = 0;
        for (std::size_t u = 0; u < n; ++u) {
            sum += wi[u] * d[u];
        }
        scores[v] = Rational(sum, common);
    }
    return make_exact_table(std::move(scores), Extremum::kArgmin);
}

std::vector<SparseRow> rumor_markov_transitions(const Graph& g, double c) {
    require_tree(g, "rumor_markov_transitions");
    if (!(c > 1.0)) {
        throw GraphError("rumor Markov chain needs c > 1");
    }
    std::size_t n = g.size();
    std::vector<SparseRow> rows(n);
    if (n == 1) {
        rows[0] = {{0}, {1.0}};
        return rows;
    }
    auto view = rooted_view(g, 0);
    double scale = c * static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        SparseRow& row = rows[i];
        double off = 0.0;
        for (NodeId j : g.neighbors(static_cast<NodeId>(i))) {
            // t_j^i: size of j's side when the tree is rooted at i.
            double t = view.parent[j] == static_cast<NodeId>(i) ? view.subtree_size[j]
                                                                : static_cast<double>(n) - view.subtree_size[i];
            row.cols.push_back(j);
            row.probs.push_back(t / scale);
            off += t / scale;
        }
        row.cols.push_back(static_cast<NodeId>(i));
        row.probs.push_back(1.0 - off);
    }
    return rows;
}

StationaryResult rumor_markov_stationary(const Graph& g, double c, double tol, int max_iter) {
    auto rows = rumor_markov_transitions(g, c);
    std::size_t n = g.size();
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);
    StationaryResult r;
    for (r.iterations = 1; r.iterations <= max_iter; ++r.iterations) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < rows[i].cols.size(); ++k) {
                next[rows[i].cols[k]] += x[i] * rows[i].probs[k];
            }
        }
        double total = std::accumulate(next.begin(), next.end(), 0.0);
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            next[i] /= total;
            change += std::abs(next[i] - x[i]);
        }
        x.swap(next);
        r.last_change = change;
        if (change < tol) {
            break;
        }
    }
    r.table = make_real_table(std::move(x), Extremum::kArgmax, Regime::kReal, 1e-12);
    return r;
}

}  // namespace srcdet
