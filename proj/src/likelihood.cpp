#include "srcdet/likelihood.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace srcdet {

namespace {

// (n-1)! / prod of subtree sizes below root, i.e. the number of orders from root.
BigInt orders_from(const Graph& tree, NodeId root) {
    RootedView rv = rooted_view(tree, root);
    BigInt r = factorial(static_cast<unsigned>(tree.size() - 1));
    for (std::size_t u = 0; u < tree.size(); ++u) {
        if (static_cast<NodeId>(u) != root) {
            r /= rv.subtree_size[u];
        }
    }
    return r;
}

BigInt orders_on_subset(const Graph& g, std::vector<NodeId> nodes, NodeId root) {
    std::sort(nodes.begin(), nodes.end());
    Graph sub = induced_subgraph(g, nodes);
    auto it = std::lower_bound(nodes.begin(), nodes.end(), root);
    return orders_from(sub, static_cast<NodeId>(it - nodes.begin()));
}

BigInt orders_after_contraction(const Graph& g, const std::vector<NodeId>& merged) {
    Contraction c = vertex_contraction(g, merged);
    return orders_from(c.graph, c.merged);
}

// Visits each connected node set of the given size that contains seed (connected)
// and avoids banned. Every set is produced once: the first free frontier node is
// either taken or banned for the rest of the branch.
class SupersetWalker {
public:
    SupersetWalker(const Graph& g, long long cap) : g_(g), state_(g.size(), 0), cap_(cap) {}

    void run(const std::vector<NodeId>& seed, const std::vector<NodeId>& banned, std::size_t size,
             const std::function<void(const std::vector<NodeId>&)>& visit) {
        std::fill(state_.begin(), state_.end(), 0);
        members_.clear();
        for (NodeId b : banned) {
            state_[b] = 2;
        }
        for (NodeId s : seed) {
            if (state_[s] == 0) {
                state_[s] = 1;
                members_.push_back(s);
            }
        }
        if (members_.size() > size) {
            return;
        }
        size_ = size;
        visit_ = &visit;
        grow();
    }

private:
    void grow() {
        if (members_.size() == size_) {
            if (++count_ > cap_) {
                throw SizeLimitError("subtree enumeration exceeds " + std::to_string(cap_) + " sets");
            }
            (*visit_)(members_);
            return;
        }
        NodeId pick = -1;
        for (NodeId m : members_) {
            for (NodeId w : g_.neighbors(m)) {
                if (state_[w] == 0 && (pick < 0 || w < pick)) {
                    pick = w;
                }
            }
        }
        if (pick < 0) {
            return;
        }
        state_[pick] = 1;
        members_.push_back(pick);
        grow();
        members_.pop_back();
        state_[pick] = 2;
        grow();
        state_[pick] = 0;
    }

    const Graph& g_;
    std::vector<char> state_;  // 0 free, 1 member, 2 banned
    std::vector<NodeId> members_;
    std::size_t size_ = 0;
    long long cap_;
    long long count_ = 0;
    const std::function<void(const std::vector<NodeId>&)>* visit_ = nullptr;
};

std::vector<NodeId> tree_path(const Graph& g, NodeId from, NodeId to) {
    RootedView rv = bfs_tree(g, to);
    std::vector<NodeId> path;
    for (NodeId u = from; u >= 0; u = rv.parent[u]) {
        path.push_back(u);
        if (u == to) {
            break;
        }
    }
    return path;
}

Rational inverse(long long w) {
    if (w <= 0) {
        throw std::logic_error("non-positive boundary weight");
    }
    return Rational(1, w);
}

void require_subtree_size(const Snapshot& snap) {
    if (snap.size() > static_cast<std::size_t>(kSubtreeNodeCap)) {
        throw SizeLimitError("snapshot has " + std::to_string(snap.size()) + " nodes; subtree enumeration cap is " +
                             std::to_string(kSubtreeNodeCap));
    }
}

}  // namespace

LikelihoodTable make_likelihood_table(std::vector<Rational> likelihood) {
    LikelihoodTable t;
    Rational total = 0;
    for (const auto& p : likelihood) {
        total += p;
    }
    t.posterior.reserve(likelihood.size());
    for (const auto& p : likelihood) {
        t.posterior.push_back(total == 0 ? Rational(0) : Rational(p / total));
    }
    Rational best = -1;
    for (std::size_t v = 0; v < likelihood.size(); ++v) {
        if (likelihood[v] > best) {
            best = likelihood[v];
            t.argmax.assign(1, static_cast<NodeId>(v));
        } else if (likelihood[v] == best) {
            t.argmax.push_back(static_cast<NodeId>(v));
        }
    }
    t.likelihood = std::move(likelihood);
    return t;
}

std::string likelihood_to_csv(const LikelihoodTable& t, const std::vector<NodeId>& ids) {
    std::ostringstream out;
    out << "node,numerator,denominator,posterior\n";
    for (std::size_t v = 0; v < t.likelihood.size(); ++v) {
        const Rational& p = t.likelihood[v];
        out << (ids.empty() ? static_cast<NodeId>(v) : ids[v]) << ',' << numerator(p) << ',' << denominator(p) << ','
            << format_sig(to_double(t.posterior[v])) << '\n';
    }
    return out.str();
}

std::string likelihood_to_json(const LikelihoodTable& t, const std::vector<NodeId>& ids) {
    auto id = [&](std::size_t v) { return ids.empty() ? static_cast<NodeId>(v) : ids[v]; };
    nlohmann::ordered_json j;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t v = 0; v < t.likelihood.size(); ++v) {
        rows.push_back({{"node", id(v)},
                        {"likelihood", to_string(t.likelihood[v])},
                        {"posterior", to_string(t.posterior[v])}});
    }
    j["nodes"] = rows;
    std::vector<NodeId> best;
    for (NodeId v : t.argmax) {
        best.push_back(id(static_cast<std::size_t>(v)));
    }
    j["argmax"] = best;
    return j.dump(2);
}

LikelihoodTable exact_source_likelihood(const Snapshot& snap, int cap) {
    validate(snap);
    const std::size_t n = snap.size();
    if (cap > 24) {
        throw std::invalid_argument("exact likelihood cap above 24 nodes is not supported");
    }
    if (n > static_cast<std::size_t>(cap)) {
        throw SizeLimitError("snapshot has " + std::to_string(n) + " nodes; exact likelihood cap is " +
                             std::to_string(cap));
    }
    std::vector<uint32_t> nbr(n, 0);
    for (std::size_t u = 0; u < n; ++u) {
        for (NodeId w : snap.graph.neighbors(static_cast<NodeId>(u))) {
            nbr[u] |= 1u << w;
        }
    }
    const uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    std::vector<Rational> memo(std::size_t{1} << n);
    std::vector<char> done(std::size_t{1} << n, 0);

    // Probability mass of all completions of the infected set `mask` with boundary weight w.
    std::function<Rational(uint32_t, long long)> rest = [&](uint32_t mask, long long w) -> Rational {
        if (mask == full) {
            return Rational(1);
        }
        if (done[mask]) {
            return memo[mask];
        }
        Rational sum = 0;
        const Rational inv = inverse(w);
        for (std::size_t u = 0; u < n; ++u) {
            if (mask >> u & 1u) {
                continue;
            }
            int c = std::popcount(nbr[u] & mask);
            if (c == 0) {
                continue;
            }
            sum += c * inv * rest(mask | 1u << u, w + snap.underlying_degree[u] - 2LL * c);
        }
        done[mask] = 1;
        memo[mask] = sum;
        return sum;
    };

    std::vector<Rational> p(n);
    for (std::size_t v = 0; v < n; ++v) {
        p[v] = rest(1u << v, snap.underlying_degree[v]);
    }
    return make_likelihood_table(std::move(p));
}

Rational end_vertex_position_probability(int d, int n, int k) {
    if (d < 2 || n < 1 || k < 1 || k > n) {
        throw std::invalid_argument("end_vertex_position_probability: need d >= 2 and 1 <= k <= n");
    }
    Rational p = 1;
    for (int j = 1; j < k; ++j) {
        p *= inverse(d + static_cast<long long>(j - 1) * (d - 2));
    }
    for (int j = std::max(k, 1); j < n; ++j) {
        p *= inverse(static_cast<long long>(d - 2) * j + 3 - d);
    }
    return p;
}

BigInt position_count(const Snapshot& snap, NodeId v, NodeId ve, int k) {
    validate(snap);
    if (!is_tree(snap.graph)) {
        throw GraphError("position_count: snapshot is not a tree");
    }
    require_subtree_size(snap);
    const int n = static_cast<int>(snap.size());
    if (v < 0 || v >= n || ve < 0 || ve >= n || !snap.end_vertex[ve]) {
        throw std::invalid_argument("position_count: ve must be an end vertex of the snapshot");
    }
    if (v == ve) {
        return k == 1 ? orders_from(snap.graph, v) : BigInt(0);
    }
    const NodeId parent = snap.graph.neighbors(ve).front();
    std::vector<NodeId> seed = tree_path(snap.graph, v, parent);
    if (k < 2 || k > n || static_cast<int>(seed.size()) > k - 1) {
        return 0;
    }
    BigInt total = 0;
    SupersetWalker walker(snap.graph, kSubtreeCountCap);
    walker.run(seed, {ve}, static_cast<std::size_t>(k - 1), [&](const std::vector<NodeId>& s) {
        BigInt p1 = orders_on_subset(snap.graph, s, v);
        std::vector<NodeId> merged = s;
        merged.push_back(ve);
        total += p1 * orders_after_contraction(snap.graph, merged);
    });
    return total;
}

BigInt position_count_line(int n, int i, int k) {
    if (i < 1 || i >= n) {
        throw std::invalid_argument("position_count_line: need 1 <= i < n");
    }
    return binomial(k - 2, k - n + i - 1);
}

LikelihoodTable line_likelihood(int d, int n) {
    if (d < 2 || n < 2) {
        throw std::invalid_argument("line_likelihood: need d >= 2 and n >= 2");
    }
    std::vector<Rational> p(n);
    for (int i = 1; i < n; ++i) {
        Rational sum = 0;
        for (int k = n - i + 1; k <= n; ++k) {
            sum += Rational(position_count_line(n, i, k)) * end_vertex_position_probability(d, n, k);
        }
        p[i - 1] = sum;
    }
    p[n - 1] = end_vertex_position_probability(d, n, 1);
    return make_likelihood_table(std::move(p));
}

LikelihoodTable broom_likelihood(int d, int t, int k) {
    if (t < 1 || k < 1) {
        throw std::invalid_argument("broom_likelihood: need t >= 1 and k >= 1");
    }
    if (d < k + 1) {
        throw std::invalid_argument("broom_likelihood: degree must be at least k + 1");
    }
    const int n = 2 * t + k;
    auto weight = [d](long long j, long long e) { return d * (j - e) + e - 2 * (j - 1); };

    // Sum over interleavings of r end vertices and `line` forced line nodes after
    // position j0 (e0 end vertices already infected) of the remaining step factors.
    auto tail = [&](int j0, int e0, int r, int line) {
        std::vector<Rational> dp(k + 2, Rational(0));
        dp[e0] = 1;
        for (int j = j0; j < n; ++j) {
            std::vector<Rational> next(k + 2, Rational(0));
            for (int e = e0; e <= e0 + r; ++e) {
                if (dp[e] == 0) {
                    continue;
                }
                Rational val = dp[e] * inverse(weight(j, e));
                const int used_end = e - e0;
                const int used_line = (j - j0) - used_end;
                if (used_line < line) {
                    next[e] += val;
                }
                if (used_end < r) {
                    next[e + 1] += val;
                }
            }
            dp.swap(next);
        }
        return dp[e0 + r];
    };

    std::vector<Rational> p(n);
    const Rational kfact(factorial(static_cast<unsigned>(k)));
    for (int i = 1; i <= 2 * t; ++i) {
        Rational sum = 0;
        const int lo = 2 * t - i + 1;
        for (int J = lo; J <= (i == 2 * t ? 1 : 2 * t); ++J) {
            BigInt ways = i == 2 * t ? BigInt(1) : binomial(J - 2, 2 * t - i - 1);
            if (ways == 0) {
                continue;
            }
            Rational prefix = 1;
            for (int j = 1; j < J; ++j) {
                prefix *= inverse(weight(j, 0));
            }
            sum += Rational(ways) * prefix * tail(J, 0, k, 2 * t - J);
        }
        p[i - 1] = kfact * sum;
    }
    const Rational end_mass = Rational(factorial(static_cast<unsigned>(k - 1))) * tail(2, 1, k - 1, 2 * t - 1);
    for (int e = 0; e < k; ++e) {
        p[2 * t + e] = end_mass;
    }
    return make_likelihood_table(std::move(p));
}

Rational cycle_position_probability(int d, int n, int k) {
    if (d < 3 || k < 3 || k > n) {
        throw std::invalid_argument("cycle_position_probability: need d >= 3 and 3 <= k <= n");
    }
    Rational p = 2;
    for (int j = 1; j < k; ++j) {
        p *= inverse(d + static_cast<long long>(j - 1) * (d - 2));
    }
    for (int j = k; j < n; ++j) {
        p *= inverse(static_cast<long long>(d - 2) * j);
    }
    return p;
}

namespace {

void require_pseudo_tree(const Snapshot& snap) {
    validate(snap);
    if (!is_unicyclic(snap.graph)) {
        throw GraphError("snapshot is not unicyclic");
    }
    if (snap.end_vertex_count() > 0) {
        throw GraphError("pseudo-tree likelihood requires a snapshot without end vertices");
    }
    for (int deg : snap.underlying_degree) {
        if (deg != snap.underlying_degree.front()) {
            throw GraphError("pseudo-tree likelihood requires a degree-regular underlying graph");
        }
    }
    require_subtree_size(snap);
}

// counts[k] = number of orders from v whose last cycle vertex is k-th.
std::vector<BigInt> cycle_counts(const Snapshot& snap, NodeId v) {
    const Graph& g = snap.graph;
    const int n = static_cast<int>(g.size());
    std::vector<NodeId> cycle = unicyclic_cycle(g);
    std::vector<char> on_cycle(n, 0);
    for (NodeId c : cycle) {
        on_cycle[c] = 1;
    }
    // Path from v to its nearest cycle vertex.
    std::vector<NodeId> path{v};
    {
        RootedView rv = bfs_tree(g, v);
        NodeId hit = -1;
        for (NodeId u : rv.order) {
            if (on_cycle[u]) {
                hit = u;
                break;
            }
        }
        path = tree_path(g, hit, v);
        std::reverse(path.begin(), path.end());
    }
    const NodeId anchor = path.back();

    std::vector<BigInt> counts(n + 1, BigInt(0));
    SupersetWalker walker(g, kSubtreeCountCap);
    for (NodeId last : cycle) {
        if (last == v || last == anchor) {
            continue;
        }
        std::vector<NodeId> seed = path;
        for (NodeId c : cycle) {
            if (c != last && c != anchor) {
                seed.push_back(c);
            }
        }
        for (int k = static_cast<int>(seed.size()) + 1; k <= n; ++k) {
            walker.run(seed, {last}, static_cast<std::size_t>(k - 1), [&](const std::vector<NodeId>& s) {
                BigInt p1 = orders_on_subset(g, s, v);
                std::vector<NodeId> merged = s;
                merged.push_back(last);
                counts[k] += p1 * orders_after_contraction(g, merged);
            });
        }
    }
    return counts;
}

}  // namespace

BigInt cycle_position_count(const Snapshot& snap, NodeId v, int k) {
    require_pseudo_tree(snap);
    const int n = static_cast<int>(snap.size());
    if (v < 0 || v >= n) {
        throw std::invalid_argument("cycle_position_count: node out of range");
    }
    if (k < 1 || k > n) {
        return 0;
    }
    return cycle_counts(snap, v)[k];
}

LikelihoodTable pseudo_tree_likelihood(const Snapshot& snap) {
    require_pseudo_tree(snap);
    const int n = static_cast<int>(snap.size());
    const int d = snap.underlying_degree.front();
    std::vector<Rational> p(n);
    for (NodeId v = 0; v < n; ++v) {
        std::vector<BigInt> counts = cycle_counts(snap, v);
        Rational sum = 0;
        for (int k = 3; k <= n; ++k) {
            if (counts[k] != 0) {
                sum += Rational(counts[k]) * cycle_position_probability(d, n, k);
            }
        }
        p[v] = sum;
    }
    return make_likelihood_table(std::move(p));
}

}  // namespace srcdet
