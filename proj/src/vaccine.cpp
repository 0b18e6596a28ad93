#include "srcdet/vaccine.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "srcdet/centrality.hpp"

namespace srcdet {

namespace {

void require_tree(const Graph& g, const char* what) {
    if (!is_tree(g)) {
        throw GraphError(std::string(what) + ": input is not a tree");
    }
}

void require_k(const Graph& g, int k, const char* what) {
    if (k < 1 || static_cast<std::size_t>(k) > g.size()) {
        throw std::invalid_argument(std::string(what) + ": need 1 <= k <= N");
    }
}

// Component sizes of the tree around v: the branch sizes of v.
std::vector<long long> branch_sizes(const Graph& g, const RootedView& rv, NodeId v) {
    std::vector<long long> out;
    const long long n = static_cast<long long>(g.size());
    for (NodeId w : g.neighbors(v)) {
        out.push_back(w == rv.parent[v] ? n - rv.subtree_size[v] : rv.subtree_size[w]);
    }
    return out;
}

}  // namespace

long long outage_objective(const Graph& g, const std::vector<NodeId>& protect) {
    const std::size_t n = g.size();
    std::vector<char> seen(n, 0);
    for (NodeId v : protect) {
        if (v < 0 || static_cast<std::size_t>(v) >= n) {
            throw std::invalid_argument("outage_objective: node out of range");
        }
        seen[v] = 1;
    }
    long long total = 0;
    std::vector<NodeId> stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) {
            continue;
        }
        long long size = 0;
        seen[s] = 1;
        stack.assign(1, static_cast<NodeId>(s));
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
        total += size * size;
    }
    return total;
}

Rational expected_outage(const Graph& g, const std::vector<NodeId>& protect) {
    if (g.size() == 0) {
        return 0;
    }
    return Rational(outage_objective(g, protect), static_cast<long>(g.size()));
}

int CentroidTree::height() const { return parent.empty() ? 0 : *std::max_element(level.begin(), level.end()); }

CentroidTree centroid_decomposition(const Graph& g) {
    require_tree(g, "centroid_decomposition");
    const std::size_t n = g.size();
    CentroidTree ct;
    ct.parent.assign(n, -1);
    ct.level.assign(n, 0);
    ct.centrality.assign(n, 0);
    ct.children.assign(n, {});
    if (n == 0) {
        return ct;
    }
    std::vector<char> removed(n, 0);
    std::vector<NodeId> comp_parent(n, -1);
    std::vector<int> size(n, 0);

    struct Task {
        NodeId start;
        NodeId above;  // centroid of the enclosing component
        int level;
    };
    std::vector<Task> tasks{{0, -1, 1}};
    while (!tasks.empty()) {
        Task task = tasks.back();
        tasks.pop_back();
        // BFS order of the component containing start.
        std::vector<NodeId> order{task.start};
        comp_parent[task.start] = -1;
        for (std::size_t i = 0; i < order.size(); ++i) {
            NodeId u = order[i];
            for (NodeId w : g.neighbors(u)) {
                if (!removed[w] && w != comp_parent[u]) {
                    comp_parent[w] = u;
                    order.push_back(w);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            size[*it] = 1;
            for (NodeId w : g.neighbors(*it)) {
                if (!removed[w] && w != comp_parent[*it]) {
                    size[*it] += size[w];
                }
            }
        }
        const int total = static_cast<int>(order.size());
        NodeId best = -1;
        int best_weight = total + 1;
        for (NodeId u : order) {
            int weight = total - size[u];
            for (NodeId w : g.neighbors(u)) {
                if (!removed[w] && w != comp_parent[u]) {
                    weight = std::max(weight, size[w]);
                }
            }
            if (weight < best_weight || (weight == best_weight && u < best)) {
                best = u;
                best_weight = weight;
            }
        }
        removed[best] = 1;
        ct.level[best] = task.level;
        ct.centrality[best] = total;
        ct.parent[best] = task.above;
        if (task.above >= 0) {
            ct.children[task.above].push_back(best);
        } else {
            ct.root = best;
        }
        // Push in reverse so components are processed in neighbour order.
        const auto& nb = g.neighbors(best);
        for (auto it = nb.rbegin(); it != nb.rend(); ++it) {
            if (!removed[*it]) {
                tasks.push_back({*it, best, task.level + 1});
            }
        }
    }
    for (auto& c : ct.children) {
        std::sort(c.begin(), c.end());
    }
    return ct;
}

ProtectionSet select_protection_set(const Graph& g, int k, const ProtectionOptions& opts) {
    require_k(g, k, "select_protection_set");
    if (!is_connected(g)) {
        throw GraphError("select_protection_set: graph is not connected");
    }
    ProtectionSet out;
    out.method = "vaccine_centrality";
    Graph tree = g;
    if (!is_tree(g)) {
        NodeId root = opts.bfs_root ? *opts.bfs_root : distance_centrality(g).representative();
        RootedView rv = bfs_tree(g, root);
        std::vector<Edge> edges;
        for (std::size_t u = 0; u < g.size(); ++u) {
            if (rv.parent[u] >= 0) {
                edges.emplace_back(rv.parent[u], static_cast<NodeId>(u));
            }
        }
        tree = Graph::from_edges(g.size(), edges);
    }
    CentroidTree ct = centroid_decomposition(tree);
    std::vector<NodeId> order(g.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (ct.centrality[a] != ct.centrality[b]) {
            return ct.centrality[a] > ct.centrality[b];
        }
        if (ct.level[a] != ct.level[b]) {
            return ct.level[a] < ct.level[b];
        }
        return a < b;
    });
    out.nodes.assign(order.begin(), order.begin() + k);
    out.objective = outage_objective(g, out.nodes);
    return out;
}

ProtectionSet brute_force_protection(const Graph& g, int k) {
    require_k(g, k, "brute_force_protection");
    const int n = static_cast<int>(g.size());
    if (binomial(n, k) > kBruteForceCap) {
        throw std::invalid_argument("brute_force_protection: C(N, k) exceeds " + std::to_string(kBruteForceCap));
    }
    ProtectionSet out;
    out.method = "brute_force";
    std::vector<NodeId> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    out.nodes = pick;
    out.objective = outage_objective(g, pick);
    if (k == n) {
        return out;
    }
    while (true) {
        int i = k - 1;
        while (i >= 0 && pick[i] == n - k + i) {
            --i;
        }
        if (i < 0) {
            break;
        }
        ++pick[i];
        for (int j = i + 1; j < k; ++j) {
            pick[j] = pick[j - 1] + 1;
        }
        long long f = outage_objective(g, pick);
        if (f < out.objective) {
            out.objective = f;
            out.nodes = pick;
        }
    }
    return out;
}

ProtectionSet degree_heuristic_protection(const Graph& g, int k) {
    require_k(g, k, "degree_heuristic_protection");
    std::vector<NodeId> order(g.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });
    ProtectionSet out;
    out.method = "degree";
    out.nodes.assign(order.begin(), order.begin() + k);
    out.objective = outage_objective(g, out.nodes);
    return out;
}

BoundReport bound_check(const Graph& g) {
    require_tree(g, "bound_check");
    BoundReport r;
    const std::size_t n = g.size();
    if (n == 0) {
        r.chain_holds = true;
        return r;
    }
    RootedView rv = rooted_view(g, 0);
    long long min_max = -1;
    r.optimum = -1;
    std::vector<long long> maxes(n), sums(n);
    for (std::size_t v = 0; v < n; ++v) {
        long long mx = 0, sum = 0;
        for (long long c : branch_sizes(g, rv, static_cast<NodeId>(v))) {
            mx = std::max(mx, c);
            sum += c * c;
        }
        maxes[v] = mx;
        sums[v] = sum;
        if (min_max < 0 || mx < min_max) {
            min_max = mx;
        }
        if (r.optimum < 0 || sum < r.optimum) {
            r.optimum = sum;
        }
    }
    r.lower = min_max * min_max;
    r.upper = static_cast<long long>(n - 1) * min_max;
    r.centroid = centroid_by_message_passing(g).centroids.front();
    r.centroid_max = maxes[r.centroid];
    r.centroid_sum = sums[r.centroid];
    r.chain_holds = r.lower <= r.optimum && r.optimum <= r.upper;
    r.centroid_attains_lower = r.centroid_max * r.centroid_max == r.lower;
    r.centroid_attains_optimum = r.centroid_sum == r.optimum;
    return r;
}

std::string protection_report_json(const Graph& g, const ProtectionSet& set, const std::optional<BoundReport>& bounds,
                                   const std::vector<long long>& ids) {
    auto label = [&](NodeId v) { return ids.empty() ? static_cast<long long>(v) : ids.at(v); };
    std::vector<long long> nodes;
    for (NodeId v : set.nodes) {
        nodes.push_back(label(v));
    }
    nlohmann::ordered_json j;
    j["k"] = set.nodes.size();
    j["method"] = set.method;
    j["protection_set"] = nodes;
    j["objective"] = set.objective;
    j["expected_outage"] = to_string(expected_outage(g, set.nodes));
    if (bounds) {
        j["bound_chain"] = {{"lower", bounds->lower},
                            {"optimum", bounds->optimum},
                            {"upper", bounds->upper},
                            {"holds", bounds->chain_holds},
                            {"centroid", label(bounds->centroid)},
                            {"centroid_attains_lower", bounds->centroid_attains_lower},
                            {"centroid_attains_optimum", bounds->centroid_attains_optimum}};
    } else {
        j["bound_chain"] = nullptr;
    }
    return j.dump(2);
}

}  // namespace srcdet
