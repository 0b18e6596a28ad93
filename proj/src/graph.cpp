#include "srcdet/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <sstream>
#include <tuple>

namespace srcdet {

namespace {

std::string edge_str(long long u, long long v) {
    return std::to_string(u) + " " + std::to_string(v);
}

}  // namespace

Graph Graph::from_edges(std::size_t n, const std::vector<Edge>& edges) {
    Graph g(n);
    for (const auto& [u, v] : edges) {
        if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n) {
            throw GraphError("edge endpoint out of range: " + edge_str(u, v));
        }
        if (u == v) {
            throw GraphError("self-loop at node " + std::to_string(u));
        }
        g.adj_[u].push_back(v);
        g.adj_[v].push_back(u);
    }
    for (std::size_t v = 0; v < n; ++v) {
        auto& list = g.adj_[v];
        std::sort(list.begin(), list.end());
        auto dup = std::adjacent_find(list.begin(), list.end());
        if (dup != list.end()) {
            throw GraphError("duplicate edge: " + edge_str(static_cast<long long>(v), *dup));
        }
    }
    g.edge_count_ = edges.size();
    return g;
}

Graph Graph::from_edges_merged(std::size_t n, std::vector<Edge> edges) {
    for (auto& e : edges) {
        if (e.first > e.second) {
            std::swap(e.first, e.second);
        }
    }
    edges.erase(std::remove_if(edges.begin(), edges.end(), [](const Edge& e) { return e.first == e.second; }),
                edges.end());
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return from_edges(n, edges);
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    const auto& list = adj_[u];
    return std::binary_search(list.begin(), list.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t u = 0; u < adj_.size(); ++u) {
        for (NodeId v : adj_[u]) {
            if (static_cast<NodeId>(u) < v) {
                out.emplace_back(static_cast<NodeId>(u), v);
            }
        }
    }
    return out;
}

EdgeListResult from_edge_list(std::istream& in) {
    struct RawEdge {
        long long u, v;
        std::size_t line;
    };
    std::vector<RawEdge> raw;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        std::size_t end = hash == std::string::npos ? line.size() : hash;
        const char* p = line.data();
        const char* e = line.data() + end;
        long long vals[2];
        int count = 0;
        while (true) {
            while (p < e && (*p == ' ' || *p == '\t' || *p == '\r' || *p == ',')) {
                ++p;
            }
            if (p >= e) {
                break;
            }
            if (count == 2) {
                throw GraphError("line " + std::to_string(line_no) + ": expected two node ids");
            }
            auto [next, ec] = std::from_chars(p, e, vals[count]);
            if (ec != std::errc() || vals[count] < 0) {
                throw GraphError("line " + std::to_string(line_no) + ": invalid node id");
            }
            ++count;
            p = next;
        }
        if (count == 0) {
            continue;
        }
        if (count != 2) {
            throw GraphError("line " + std::to_string(line_no) + ": expected two node ids");
        }
        if (vals[0] == vals[1]) {
            throw GraphError("line " + std::to_string(line_no) + ": self-loop at node " + std::to_string(vals[0]));
        }
        raw.push_back({std::min(vals[0], vals[1]), std::max(vals[0], vals[1]), line_no});
    }

    std::vector<long long> ids;
    ids.reserve(raw.size() * 2);
    for (const auto& r : raw) {
        ids.push_back(r.u);
        ids.push_back(r.v);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    std::sort(raw.begin(), raw.end(), [](const RawEdge& a, const RawEdge& b) {
        return std::tie(a.u, a.v, a.line) < std::tie(b.u, b.v, b.line);
    });
    for (std::size_t i = 1; i < raw.size(); ++i) {
        if (raw[i].u == raw[i - 1].u && raw[i].v == raw[i - 1].v) {
            throw GraphError("line " + std::to_string(raw[i].line) + ": duplicate edge " + edge_str(raw[i].u, raw[i].v));
        }
    }

    auto index_of = [&ids](long long x) {
        return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), x) - ids.begin());
    };
    std::vector<Edge> edges;
    edges.reserve(raw.size());
    for (const auto& r : raw) {
        edges.emplace_back(index_of(r.u), index_of(r.v));
    }
    raw.clear();
    raw.shrink_to_fit();
    EdgeListResult result;
    result.graph = Graph::from_edges(ids.size(), edges);
    result.original_ids = std::move(ids);
    return result;
}

EdgeListResult from_edge_list(const std::string& text) {
    std::istringstream in(text);
    return from_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    for (const auto& [u, v] : g.edges()) {
        out << u << ' ' << v << '\n';
    }
}

std::vector<int> bfs_distances(const Graph& g, NodeId source) {
    if (source < 0 || static_cast<std::size_t>(source) >= g.size()) {
        throw GraphError("source out of range: " + std::to_string(source));
    }
    std::vector<int> dist(g.size(), kUnreachable);
    std::vector<NodeId> queue;
    queue.reserve(g.size());
    dist[source] = 0;
    queue.push_back(source);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        NodeId u = queue[head];
        for (NodeId w : g.neighbors(u)) {
            if (dist[w] == kUnreachable) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return dist;
}

bool is_connected(const Graph& g) {
    if (g.size() == 0) {
        return true;
    }
    auto dist = bfs_distances(g, 0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d == kUnreachable; });
}

bool is_tree(const Graph& g) { return g.size() > 0 && g.edge_count() + 1 == g.size() && is_connected(g); }

bool is_unicyclic(const Graph& g) { return g.size() > 0 && g.edge_count() == g.size() && is_connected(g); }

Graph induced_subgraph(const Graph& g, const std::vector<NodeId>& nodes) {
    std::vector<NodeId> local(g.size(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        local[nodes[i]] = static_cast<NodeId>(i);
    }
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (NodeId w : g.neighbors(nodes[i])) {
            NodeId j = local[w];
            if (j >= 0 && static_cast<NodeId>(i) < j) {
                edges.emplace_back(static_cast<NodeId>(i), j);
            }
        }
    }
    return Graph::from_edges(nodes.size(), edges);
}

Graph remove_edges(const Graph& g, const std::vector<Edge>& removed) {
    std::vector<Edge> drop;
    for (auto [u, v] : removed) {
        drop.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(drop.begin(), drop.end());
    std::vector<Edge> kept;
    for (const auto& e : g.edges()) {
        if (!std::binary_search(drop.begin(), drop.end(), e)) {
            kept.push_back(e);
        }
    }
    return Graph::from_edges(g.size(), kept);
}

RootedView bfs_tree(const Graph& g, NodeId root) {
    if (root < 0 || static_cast<std::size_t>(root) >= g.size()) {
        throw GraphError("root out of range: " + std::to_string(root));
    }
    RootedView view;
    std::size_t n = g.size();
    view.root = root;
    view.parent.assign(n, -1);
    view.children.assign(n, {});
    view.subtree_size.assign(n, 0);
    std::vector<char> seen(n, 0);
    seen[root] = 1;
    view.order.push_back(root);
    for (std::size_t head = 0; head < view.order.size(); ++head) {
        NodeId u = view.order[head];
        for (NodeId w : g.neighbors(u)) {
            if (!seen[w]) {
                seen[w] = 1;
                view.parent[w] = u;
                view.children[u].push_back(w);
                view.order.push_back(w);
            }
        }
    }
    for (auto it = view.order.rbegin(); it != view.order.rend(); ++it) {
        NodeId u = *it;
        view.subtree_size[u] += 1;
        if (view.parent[u] >= 0) {
            view.subtree_size[view.parent[u]] += view.subtree_size[u];
        }
    }
    return view;
}

RootedView rooted_view(const Graph& g, NodeId root) {
    if (!is_tree(g)) {
        throw GraphError("rooted_view requires a tree");
    }
    return bfs_tree(g, root);
}

Contraction vertex_contraction(const Graph& g, const std::vector<NodeId>& nodes) {
    if (nodes.empty()) {
        throw GraphError("vertex_contraction: empty node set");
    }
    std::vector<char> in_set(g.size(), 0);
    NodeId keep = nodes.front();
    for (NodeId v : nodes) {
        if (v < 0 || static_cast<std::size_t>(v) >= g.size()) {
            throw GraphError("vertex_contraction: node out of range");
        }
        in_set[v] = 1;
        keep = std::min(keep, v);
    }
    Contraction c;
    c.mapping.assign(g.size(), -1);
    NodeId next = 0;
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (static_cast<NodeId>(v) == keep) {
            c.merged = next;
            c.mapping[v] = next++;
        } else if (!in_set[v]) {
            c.mapping[v] = next++;
        }
    }
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (in_set[v]) {
            c.mapping[v] = c.merged;
        }
    }
    std::vector<Edge> edges;
    for (const auto& [u, v] : g.edges()) {
        edges.emplace_back(c.mapping[u], c.mapping[v]);
    }
    c.graph = Graph::from_edges_merged(static_cast<std::size_t>(next), std::move(edges));
    return c;
}

CycleSize minimum_chordless_cycle_size(const Graph& g, NodeId v, int cap) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.size()) {
        throw GraphError("node out of range: " + std::to_string(v));
    }
    if (g.degree(v) == 1) {
        return CycleSize::leaf();
    }
    // BFS labelled by first hop; an edge joining two different branches closes a cycle through v.
    std::size_t n = g.size();
    std::vector<int> dist(n, kUnreachable);
    std::vector<NodeId> branch(n, -1);
    std::vector<NodeId> queue;
    dist[v] = 0;
    queue.push_back(v);
    int best = cap + 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        NodeId u = queue[head];
        if (2 * dist[u] >= best) {
            break;
        }
        for (NodeId w : g.neighbors(u)) {
            if (w == v) {
                continue;
            }
            if (dist[w] == kUnreachable) {
                dist[w] = dist[u] + 1;
                branch[w] = u == v ? w : branch[u];
                queue.push_back(w);
            } else if (u != v && branch[w] != branch[u]) {
                best = std::min(best, dist[u] + dist[w] + 1);
            }
        }
    }
    if (best <= cap) {
        return CycleSize::cycle(best);
    }
    return CycleSize::none();
}

std::vector<NodeId> unicyclic_cycle(const Graph& g) {
    if (!is_unicyclic(g)) {
        throw GraphError("graph is not unicyclic");
    }
    // Peel leaves; what remains is the cycle.
    std::size_t n = g.size();
    std::vector<int> deg(n);
    std::vector<char> removed(n, 0);
    std::vector<NodeId> stack;
    for (std::size_t v = 0; v < n; ++v) {
        deg[v] = static_cast<int>(g.degree(v));
        if (deg[v] == 1) {
            stack.push_back(static_cast<NodeId>(v));
        }
    }
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        removed[u] = 1;
        for (NodeId w : g.neighbors(u)) {
            if (!removed[w] && --deg[w] == 1) {
                stack.push_back(w);
            }
        }
    }
    NodeId start = -1;
    for (std::size_t v = 0; v < n; ++v) {
        if (!removed[v]) {
            start = static_cast<NodeId>(v);
            break;
        }
    }
    std::vector<NodeId> cycle{start};
    NodeId prev = -1;
    NodeId cur = start;
    while (true) {
        NodeId next = -1;
        for (NodeId w : g.neighbors(cur)) {
            if (!removed[w] && w != prev) {
                next = w;
                break;
            }
        }
        if (next == start) {
            break;
        }
        cycle.push_back(next);
        prev = cur;
        cur = next;
    }
    return cycle;
}

std::vector<Edge> unicyclic_cycle_edges(const Graph& g) {
    auto cycle = unicyclic_cycle(g);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        NodeId a = cycle[i];
        NodeId b = cycle[(i + 1) % cycle.size()];
        edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

std::vector<Graph> spanning_trees_unicyclic(const Graph& g) {
    std::vector<Graph> trees;
    for (const auto& e : unicyclic_cycle_edges(g)) {
        trees.push_back(remove_edges(g, {e}));
    }
    return trees;
}

}  // namespace srcdet
