// Brute-force reference implementations used only by the tests. Each one is written
// independently of the library code it checks.
#ifndef SRCDET_TESTS_ORACLES_HPP
#define SRCDET_TESTS_ORACLES_HPP

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "srcdet/graph.hpp"
#include "srcdet/numeric.hpp"
#include "srcdet/spread.hpp"

namespace oracle {

using srcdet::Edge;
using srcdet::Graph;
using srcdet::NodeId;
using srcdet::Rational;

inline Graph random_tree(int n, std::mt19937_64& rng) {
    std::vector<Edge> edges;
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> pick(0, v - 1);
        edges.emplace_back(pick(rng), v);
    }
    // Relabel so that node 0 is not always the root of the growth process.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (auto& e : edges) {
        e = {perm[e.first], perm[e.second]};
    }
    return Graph::from_edges(n, edges);
}

// Random tree whose degrees never exceed max_deg.
inline Graph random_bounded_tree(int n, int max_deg, std::mt19937_64& rng) {
    std::vector<Edge> edges;
    std::vector<int> deg(n, 0);
    for (int v = 1; v < n; ++v) {
        std::vector<int> open;
        for (int u = 0; u < v; ++u) {
            if (deg[u] < max_deg) {
                open.push_back(u);
            }
        }
        std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
        int u = open[pick(rng)];
        edges.emplace_back(u, v);
        ++deg[u];
        ++deg[v];
    }
    return Graph::from_edges(n, edges);
}

inline Graph random_unicyclic(int n, std::mt19937_64& rng) {
    while (true) {
        Graph t = random_tree(n, rng);
        std::uniform_int_distribution<int> pick(0, n - 1);
        int a = pick(rng);
        int b = pick(rng);
        if (a == b || t.has_edge(a, b)) {
            continue;
        }
        auto edges = t.edges();
        edges.emplace_back(std::min(a, b), std::max(a, b));
        return Graph::from_edges(n, edges);
    }
}

inline std::vector<std::vector<int>> floyd(const Graph& g) {
    int n = static_cast<int>(g.size());
    const int inf = std::numeric_limits<int>::max() / 4;
    std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
    for (int i = 0; i < n; ++i) {
        d[i][i] = 0;
        for (int j : g.neighbors(i)) {
            d[i][j] = 1;
        }
    }
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
            }
        }
    }
    return d;
}

// All permutations starting at `start` that satisfy adjacency precedence, by filtering
// the full symmetric group.
inline void for_each_permitted_permutation(const Graph& g, NodeId start,
                                           const std::function<void(const std::vector<NodeId>&)>& f) {
    int n = static_cast<int>(g.size());
    std::vector<NodeId> rest;
    for (int v = 0; v < n; ++v) {
        if (v != start) {
            rest.push_back(v);
        }
    }
    std::vector<NodeId> perm(n);
    do {
        perm[0] = start;
        std::copy(rest.begin(), rest.end(), perm.begin() + 1);
        bool ok = true;
        for (int i = 1; i < n && ok; ++i) {
            bool adj = false;
            for (int j = 0; j < i && !adj; ++j) {
                adj = g.has_edge(perm[i], perm[j]);
            }
            ok = adj;
        }
        if (ok) {
            f(perm);
        }
    } while (std::next_permutation(rest.begin(), rest.end()));
}

inline long long permitted_count(const Graph& g, NodeId start) {
    long long c = 0;
    for_each_permitted_permutation(g, start, [&](const std::vector<NodeId>&) { ++c; });
    return c;
}

// Σ over permitted permutations of ∏ (number of earlier neighbours).
inline long long multiplicity_count(const Graph& g, NodeId start) {
    long long total = 0;
    for_each_permitted_permutation(g, start, [&](const std::vector<NodeId>& p) {
        long long m = 1;
        for (std::size_t i = 1; i < p.size(); ++i) {
            int c = 0;
            for (std::size_t j = 0; j < i; ++j) {
                c += g.has_edge(p[i], p[j]);
            }
            m *= c;
        }
        total += m;
    });
    return total;
}

// Likelihood by summing order probabilities; the boundary is counted node by node.
inline Rational likelihood(const srcdet::Snapshot& s, NodeId start) {
    Rational total = 0;
    const Graph& g = s.graph;
    for_each_permitted_permutation(g, start, [&](const std::vector<NodeId>& p) {
        Rational prob = 1;
        for (std::size_t i = 1; i < p.size(); ++i) {
            long long boundary = 0;
            for (std::size_t j = 0; j < i; ++j) {
                int inside = 0;
                for (std::size_t k = 0; k < i; ++k) {
                    inside += g.has_edge(p[j], p[k]);
                }
                boundary += s.underlying_degree[p[j]] - inside;
            }
            int c = 0;
            for (std::size_t j = 0; j < i; ++j) {
                c += g.has_edge(p[i], p[j]);
            }
            prob *= Rational(c, boundary);
        }
        total += prob;
    });
    return total;
}

// Betweenness by listing every shortest path explicitly.
inline std::vector<Rational> betweenness(const Graph& g) {
    int n = static_cast<int>(g.size());
    auto d = floyd(g);
    std::vector<Rational> b(n, 0);
    for (int s = 0; s < n; ++s) {
        for (int t = s + 1; t < n; ++t) {
            std::vector<std::vector<NodeId>> paths;
            std::vector<NodeId> path{s};
            std::function<void(NodeId)> walk = [&](NodeId u) {
                if (u == t) {
                    paths.push_back(path);
                    return;
                }
                for (NodeId w : g.neighbors(u)) {
                    if (d[s][w] == d[s][u] + 1 && d[w][t] == d[u][t] - 1) {
                        path.push_back(w);
                        walk(w);
                        path.pop_back();
                    }
                }
            };
            walk(s);
            for (int v = 0; v < n; ++v) {
                if (v == s || v == t) {
                    continue;
                }
                long long through = 0;
                for (const auto& p : paths) {
                    through += std::count(p.begin(), p.end(), v);
                }
                b[v] += Rational(through, static_cast<long long>(paths.size()));
            }
        }
    }
    return b;
}

// Smallest chordless cycle through each node, by enumerating all simple cycles.
inline std::vector<int> min_chordless_cycles(const Graph& g) {
    int n = static_cast<int>(g.size());
    std::vector<int> best(n, 0);
    std::vector<NodeId> path;
    std::vector<char> on(n, 0);
    std::function<void(NodeId, NodeId)> dfs = [&](NodeId root, NodeId u) {
        for (NodeId w : g.neighbors(u)) {
            if (w == root && path.size() >= 3) {
                bool chordless = true;
                int len = static_cast<int>(path.size());
                for (int i = 0; i < len && chordless; ++i) {
                    for (int j = i + 2; j < len && chordless; ++j) {
                        if (i == 0 && j == len - 1) {
                            continue;
                        }
                        if (g.has_edge(path[i], path[j])) {
                            chordless = false;
                        }
                    }
                }
                if (chordless) {
                    for (NodeId v : path) {
                        if (best[v] == 0 || len < best[v]) {
                            best[v] = len;
                        }
                    }
                }
            } else if (w > root && !on[w]) {
                on[w] = 1;
                path.push_back(w);
                dfs(root, w);
                path.pop_back();
                on[w] = 0;
            }
        }
    };
    for (int r = 0; r < n; ++r) {
        on[r] = 1;
        path = {r};
        dfs(r, r);
        on[r] = 0;
    }
    return best;
}

// Branch sizes of the tree after removing v.
inline std::vector<int> branch_sizes(const Graph& g, NodeId v) {
    std::vector<int> out;
    std::vector<char> seen(g.size(), 0);
    seen[v] = 1;
    for (NodeId c : g.neighbors(v)) {
        int size = 0;
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
        out.push_back(size);
    }
    return out;
}

// Every unlabelled rooted tree on n nodes, from canonical level sequences (successor
// rule of Beyer and Hedetniemi). Node 0 is the root; free trees appear at least once.
inline void for_each_rooted_tree(int n, const std::function<void(const Graph&)>& visit) {
    if (n == 1) {
        visit(Graph::from_edges(1, {}));
        return;
    }
    std::vector<int> level(n);
    for (int i = 0; i < n; ++i) {
        level[i] = i + 1;
    }
    while (true) {
        std::vector<Edge> edges;
        for (int i = 1; i < n; ++i) {
            int j = i - 1;
            while (level[j] != level[i] - 1) {
                --j;
            }
            edges.emplace_back(j, i);
        }
        visit(Graph::from_edges(n, edges));
        int p = n - 1;
        while (p > 0 && level[p] <= 2) {
            --p;
        }
        if (p == 0) {
            return;
        }
        int q = p - 1;
        while (level[q] != level[p] - 1) {
            --q;
        }
        for (int i = p; i < n; ++i) {
            level[i] = level[i - (p - q)];
        }
    }
}

}  // namespace oracle

#endif
