#ifndef SRCDET_GRAPH_HPP
#define SRCDET_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace srcdet {

using NodeId = int;
using Edge = std::pair<NodeId, NodeId>;

constexpr int kUnreachable = -1;

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/*
 * Undirected simple graph on nodes 0..n-1 with sorted adjacency lists.
 * Immutable once built.
 */
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : adj_(n) {}

    // Throws GraphError on out-of-range ids, self-loops or duplicate edges.
    static Graph from_edges(std::size_t n, const std::vector<Edge>& edges);
    // Same, but merges duplicates and drops self-loops.
    static Graph from_edges_merged(std::size_t n, std::vector<Edge> edges);

    std::size_t size() const { return adj_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    const std::vector<NodeId>& neighbors(NodeId v) const { return adj_[v]; }
    std::size_t degree(NodeId v) const { return adj_[v].size(); }
    bool has_edge(NodeId u, NodeId v) const;
    // Canonical edge list: u < v, lexicographic.
    std::vector<Edge> edges() const;

    bool operator==(const Graph& other) const { return adj_ == other.adj_; }

private:
    std::vector<std::vector<NodeId>> adj_;
    std::size_t edge_count_ = 0;
};

struct EdgeListResult {
    Graph graph;
    // original_ids[v] is the id that node v carried in the input.
    std::vector<long long> original_ids;
};

EdgeListResult from_edge_list(std::istream& in);
EdgeListResult from_edge_list(const std::string& text);
void write_edge_list(std::ostream& out, const Graph& g);

std::vector<int> bfs_distances(const Graph& g, NodeId source);
bool is_connected(const Graph& g);
bool is_tree(const Graph& g);
bool is_unicyclic(const Graph& g);
// Subgraph induced by nodes; node i of the result is nodes[i].
Graph induced_subgraph(const Graph& g, const std::vector<NodeId>& nodes);
// Graph on the same nodes with the given edges removed.
Graph remove_edges(const Graph& g, const std::vector<Edge>& removed);

struct RootedView {
    NodeId root = 0;
    std::vector<NodeId> parent;  // -1 at the root
    std::vector<std::vector<NodeId>> children;
    std::vector<int> subtree_size;
    std::vector<NodeId> order;  // BFS order from the root
};

// Requires a tree.
RootedView rooted_view(const Graph& g, NodeId root);
// Works on any graph; only the component of root is populated.
RootedView bfs_tree(const Graph& g, NodeId root);

struct Contraction {
    Graph graph;
    std::vector<NodeId> mapping;  // old id -> new id
    NodeId merged = 0;
};

// The merged node takes the smallest id in the set; the rest keep their order.
Contraction vertex_contraction(const Graph& g, const std::vector<NodeId>& nodes);

struct CycleSize {
    enum class Kind { kCycle, kNone, kLeaf };
    Kind kind = Kind::kNone;
    int size = 0;

    static CycleSize cycle(int s) { return {Kind::kCycle, s}; }
    static CycleSize none() { return {Kind::kNone, 0}; }
    static CycleSize leaf() { return {Kind::kLeaf, 1}; }
    bool operator==(const CycleSize& o) const { return kind == o.kind && size == o.size; }
};

constexpr int kDefaultCycleCap = 20;

// The shortest cycle through v is always chordless, so this is a girth-at-v search.
CycleSize minimum_chordless_cycle_size(const Graph& g, NodeId v, int cap = kDefaultCycleCap);

// Cycle vertices of a unicyclic graph in cyclic order, starting from the smallest id
// and continuing toward its smaller cycle neighbour.
std::vector<NodeId> unicyclic_cycle(const Graph& g);
// One spanning tree per deleted cycle edge, cycle edges in canonical order.
std::vector<Graph> spanning_trees_unicyclic(const Graph& g);
std::vector<Edge> unicyclic_cycle_edges(const Graph& g);

}  // namespace srcdet

#endif
