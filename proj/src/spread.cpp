#include "srcdet/spread.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "json.hpp"

#include "srcdet/rng.hpp"

namespace srcdet {

std::vector<NodeId> Snapshot::end_vertices() const {
    std::vector<NodeId> out;
    for (std::size_t v = 0; v < end_vertex.size(); ++v) {
        if (end_vertex[v]) {
            out.push_back(static_cast<NodeId>(v));
        }
    }
    return out;
}

int Snapshot::end_vertex_count() const {
    return static_cast<int>(std::count(end_vertex.begin(), end_vertex.end(), 1));
}

void validate(const Snapshot& snap) {
    std::size_t n = snap.graph.size();
    if (n == 0) {
        throw GraphError("snapshot is empty");
    }
    if (snap.underlying_degree.size() != n || snap.end_vertex.size() != n) {
        throw GraphError("snapshot degree/end-vertex arrays do not match node count");
    }
    if (!is_connected(snap.graph)) {
        throw GraphError("snapshot is not connected");
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (snap.underlying_degree[v] < static_cast<int>(snap.graph.degree(static_cast<NodeId>(v)))) {
            throw GraphError("underlying degree below snapshot degree at node " + std::to_string(v));
        }
        if ((snap.underlying_degree[v] == 1) != static_cast<bool>(snap.end_vertex[v])) {
            throw GraphError("end-vertex flag inconsistent with underlying degree at node " + std::to_string(v));
        }
    }
    if (snap.source && (*snap.source < 0 || static_cast<std::size_t>(*snap.source) >= n)) {
        throw GraphError("snapshot source out of range");
    }
}

Snapshot snapshot_from_underlying(const Graph& g, const std::vector<NodeId>& infected, std::optional<NodeId> source) {
    Snapshot snap;
    snap.graph = induced_subgraph(g, infected);
    snap.global_ids = infected;
    for (NodeId v : infected) {
        snap.underlying_degree.push_back(static_cast<int>(g.degree(v)));
        snap.end_vertex.push_back(g.degree(v) == 1 ? 1 : 0);
    }
    if (source) {
        auto it = std::find(infected.begin(), infected.end(), *source);
        if (it == infected.end()) {
            throw GraphError("source is not infected");
        }
        snap.source = static_cast<NodeId>(it - infected.begin());
    }
    validate(snap);
    return snap;
}

Snapshot snapshot_in_regular(const Graph& infected, int d, const std::vector<NodeId>& end_vertices) {
    Snapshot snap;
    snap.graph = infected;
    snap.underlying_degree.assign(infected.size(), d);
    snap.end_vertex.assign(infected.size(), 0);
    for (NodeId v : end_vertices) {
        snap.underlying_degree[v] = 1;
        snap.end_vertex[v] = 1;
    }
    validate(snap);
    return snap;
}

Snapshot simulate_si(const Graph& g, NodeId source, const StopRule& rule, uint64_t seed) {
    if (source < 0 || static_cast<std::size_t>(source) >= g.size()) {
        throw GraphError("source out of range: " + std::to_string(source));
    }
    if (rule.target_size < 1 || static_cast<std::size_t>(rule.target_size) > g.size()) {
        throw GraphError("target size outside [1, |V(G)|]");
    }
    if (!is_connected(g)) {
        throw GraphError("underlying graph is not connected");
    }
    CounterRng rng(seed);
    std::vector<char> infected(g.size(), 0);
    std::map<NodeId, int> boundary;  // susceptible node -> infected neighbour count
    long long total = 0;
    std::vector<NodeId> order{source};
    std::vector<StepRecord> trace;
    int ends = g.degree(source) == 1 ? 1 : 0;

    auto infect = [&](NodeId v) {
        infected[v] = 1;
        auto it = boundary.find(v);
        if (it != boundary.end()) {
            total -= it->second;
            boundary.erase(it);
        }
        for (NodeId w : g.neighbors(v)) {
            if (!infected[w]) {
                ++boundary[w];
                ++total;
            }
        }
    };
    infect(source);

    auto end_limit_hit = [&]() {
        return static_cast<long long>(ends) * rule.end_fraction_den >=
               rule.end_fraction_num * static_cast<long long>(rule.target_size);
    };

    for (uint64_t step = 0; static_cast<int>(order.size()) < rule.target_size && total > 0; ++step) {
        if (end_limit_hit()) {
            break;
        }
        long long r = static_cast<long long>(rng.below_at(step, static_cast<uint64_t>(total)));
        NodeId chosen = -1;
        int weight = 0;
        for (const auto& [v, c] : boundary) {
            if (r < c) {
                chosen = v;
                weight = c;
                break;
            }
            r -= c;
        }
        trace.push_back({chosen, weight, total});
        order.push_back(chosen);
        if (g.degree(chosen) == 1) {
            ++ends;
        }
        infect(chosen);
    }

    std::vector<NodeId> nodes = order;
    std::sort(nodes.begin(), nodes.end());
    Snapshot snap = snapshot_from_underlying(g, nodes, source);
    std::unordered_map<NodeId, NodeId> local;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        local[nodes[i]] = static_cast<NodeId>(i);
    }
    for (NodeId v : order) {
        snap.infection_order.push_back(local[v]);
    }
    for (auto& rec : trace) {
        rec.node = local[rec.node];
    }
    snap.trace = std::move(trace);
    return snap;
}

RegularTreeSpread simulate_si_regular_tree(int d, int n, uint64_t seed) {
    if (d < 2 || n < 1) {
        throw GraphError("simulate_si_regular_tree needs d >= 2, n >= 1");
    }
    CounterRng rng(seed);
    struct Slot {
        NodeId owner;
        int branch;
    };
    std::vector<Slot> slots;
    for (int j = 0; j < d; ++j) {
        slots.push_back({0, j});
    }
    RegularTreeSpread out;
    out.branch.push_back(-1);
    std::vector<Edge> edges;
    std::vector<StepRecord> trace;
    for (int v = 1; v < n; ++v) {
        std::size_t pick = rng.below_at(static_cast<uint64_t>(v - 1), slots.size());
        Slot s = slots[pick];
        trace.push_back({v, 1, static_cast<long long>(slots.size())});
        slots[pick] = slots.back();
        slots.pop_back();
        edges.emplace_back(s.owner, v);
        out.branch.push_back(s.branch);
        for (int j = 0; j < d - 1; ++j) {
            slots.push_back({v, s.branch});
        }
    }
    out.snapshot = snapshot_in_regular(Graph::from_edges(n, edges), d);
    out.snapshot.source = 0;
    for (int v = 0; v < n; ++v) {
        out.snapshot.infection_order.push_back(v);
    }
    out.snapshot.trace = std::move(trace);
    return out;
}

void for_each_spreading_order(const Graph& g, NodeId start, const std::function<bool(const Order&)>& visit) {
    std::size_t n = g.size();
    std::vector<int> touch(n, 0);  // infected neighbour count
    std::vector<char> in(n, 0);
    Order order;
    order.reserve(n);
    bool stop = false;

    std::function<void()> rec = [&]() {
        if (stop) {
            return;
        }
        if (order.size() == n) {
            if (!visit(order)) {
                stop = true;
            }
            return;
        }
        for (std::size_t v = 0; v < n && !stop; ++v) {
            if (in[v] || touch[v] == 0) {
                continue;
            }
            in[v] = 1;
            order.push_back(static_cast<NodeId>(v));
            for (NodeId w : g.neighbors(static_cast<NodeId>(v))) {
                ++touch[w];
            }
            rec();
            for (NodeId w : g.neighbors(static_cast<NodeId>(v))) {
                --touch[w];
            }
            order.pop_back();
            in[v] = 0;
        }
    };

    in[start] = 1;
    order.push_back(start);
    for (NodeId w : g.neighbors(start)) {
        ++touch[w];
    }
    rec();
}

std::vector<Order> enumerate_spreading_orders(const Snapshot& snap, NodeId start, int cap, long long max_orders) {
    if (start < 0 || static_cast<std::size_t>(start) >= snap.size()) {
        throw GraphError("start node not infected");
    }
    if (static_cast<int>(snap.size()) > cap) {
        throw SizeLimitError("snapshot has " + std::to_string(snap.size()) + " nodes, enumeration cap is " +
                             std::to_string(cap));
    }
    std::vector<Order> out;
    bool overflow = false;
    for_each_spreading_order(snap.graph, start, [&](const Order& o) {
        if (static_cast<long long>(out.size()) >= max_orders) {
            overflow = true;
            return false;
        }
        out.push_back(o);
        return true;
    });
    if (overflow) {
        throw SizeLimitError("more than " + std::to_string(max_orders) + " spreading orders");
    }
    return out;
}

bool is_spreading_order(const Graph& g, const Order& order) {
    if (order.size() != g.size() || order.empty()) {
        return false;
    }
    std::vector<char> in(g.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        NodeId v = order[i];
        if (v < 0 || static_cast<std::size_t>(v) >= g.size() || in[v]) {
            return false;
        }
        if (i > 0) {
            const auto& nb = g.neighbors(v);
            if (std::none_of(nb.begin(), nb.end(), [&](NodeId w) { return in[w]; })) {
                return false;
            }
        }
        in[v] = 1;
    }
    return true;
}

Rational spreading_order_probability(const Snapshot& snap, const Order& order) {
    if (!is_spreading_order(snap.graph, order)) {
        throw GraphError("invalid spreading order");
    }
    std::vector<char> in(snap.size(), 0);
    long long degree_sum = 0;
    long long internal_edges = 0;
    Rational p = 1;
    for (std::size_t k = 0; k < order.size(); ++k) {
        NodeId v = order[k];
        int earlier = 0;
        for (NodeId w : snap.graph.neighbors(v)) {
            earlier += in[w];
        }
        if (k > 0) {
            long long boundary = degree_sum - 2 * internal_edges;
            p *= Rational(earlier, boundary);
        }
        in[v] = 1;
        degree_sum += snap.underlying_degree[v];
        internal_edges += earlier;
    }
    return p;
}

std::map<std::vector<int>, Rational> regular_tree_branch_law(int d, int n) {
    if (d < 2 || n < 1) {
        throw GraphError("regular_tree_branch_law needs d >= 2, n >= 1");
    }
    std::map<std::vector<int>, Rational> law;
    // Every free slot is an edge to a distinct susceptible node with one infected neighbour.
    std::vector<int> slots;  // branch label of each free slot
    for (int j = 0; j < d; ++j) {
        slots.push_back(j);
    }
    std::vector<int> sizes(d, 0);
    std::function<void(int, const Rational&)> rec = [&](int infected, const Rational& p) {
        if (infected == n) {
            law[sizes] += p;
            return;
        }
        Rational step = p / static_cast<long>(slots.size());
        std::size_t count = slots.size();
        for (std::size_t i = 0; i < count; ++i) {
            int b = slots[i];
            slots.erase(slots.begin() + static_cast<long>(i));
            for (int j = 0; j < d - 1; ++j) {
                slots.push_back(b);
            }
            ++sizes[b];
            rec(infected + 1, step);
            --sizes[b];
            slots.resize(slots.size() - static_cast<std::size_t>(d - 1));
            slots.insert(slots.begin() + static_cast<long>(i), b);
        }
    };
    rec(1, Rational(1));
    return law;
}

std::string snapshot_to_json(const Snapshot& snap) {
    nlohmann::ordered_json j;
    auto id = [&](NodeId v) { return snap.global_ids.empty() ? v : snap.global_ids[v]; };
    std::vector<NodeId> nodes;
    for (std::size_t v = 0; v < snap.size(); ++v) {
        nodes.push_back(id(static_cast<NodeId>(v)));
    }
    j["nodes"] = nodes;
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const auto& [u, v] : snap.graph.edges()) {
        edges.push_back({id(u), id(v)});
    }
    j["edges"] = edges;
    j["underlying_degree"] = snap.underlying_degree;
    std::vector<NodeId> ends;
    for (NodeId v : snap.end_vertices()) {
        ends.push_back(id(v));
    }
    j["end_vertices"] = ends;
    if (snap.source) {
        j["source"] = id(*snap.source);
    }
    return j.dump(2);
}

Snapshot snapshot_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw GraphError(std::string("snapshot JSON: ") + e.what());
    }
    try {
        auto nodes = j.at("nodes").get<std::vector<NodeId>>();
        std::map<NodeId, NodeId> local;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (!local.emplace(nodes[i], static_cast<NodeId>(i)).second) {
                throw GraphError("snapshot JSON: repeated node id");
            }
        }
        auto lookup = [&](NodeId v) {
            auto it = local.find(v);
            if (it == local.end()) {
                throw GraphError("snapshot JSON: unknown node " + std::to_string(v));
            }
            return it->second;
        };
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) {
            edges.emplace_back(lookup(e.at(0).get<NodeId>()), lookup(e.at(1).get<NodeId>()));
        }
        Snapshot snap;
        snap.graph = Graph::from_edges(nodes.size(), edges);
        snap.global_ids = nodes;
        snap.underlying_degree = j.at("underlying_degree").get<std::vector<int>>();
        snap.end_vertex.assign(nodes.size(), 0);
        if (j.contains("end_vertices")) {
            for (const auto& v : j.at("end_vertices")) {
                snap.end_vertex[lookup(v.get<NodeId>())] = 1;
            }
        }
        if (j.contains("source") && !j.at("source").is_null()) {
            snap.source = lookup(j.at("source").get<NodeId>());
        }
        validate(snap);
        return snap;
    } catch (const nlohmann::json::exception& e) {
        throw GraphError(std::string("snapshot JSON: ") + e.what());
    }
}

}  // namespace srcdet
