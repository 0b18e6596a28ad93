#ifndef SRCDET_SPREAD_HPP
#define SRCDET_SPREAD_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "srcdet/graph.hpp"
#include "srcdet/numeric.hpp"

namespace srcdet {

class SizeLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StepRecord {
    NodeId node = 0;       // local id of the newly infected node
    int weight = 0;        // its number of infected neighbours at selection time
    long long total = 0;   // boundary weight sum at selection time
};

/*
 * The observed infected subgraph. Nodes are local ids 0..n-1 of the induced graph;
 * global_ids maps them back to the underlying graph when one exists.
 */
struct Snapshot {
    Graph graph;
    std::vector<int> underlying_degree;
    std::vector<char> end_vertex;
    std::optional<NodeId> source;
    std::vector<NodeId> global_ids;
    std::vector<NodeId> infection_order;
    std::vector<StepRecord> trace;

    std::size_t size() const { return graph.size(); }
    std::vector<NodeId> end_vertices() const;
    int end_vertex_count() const;
};

// Checks the snapshot invariants; throws GraphError when violated.
void validate(const Snapshot& snap);

Snapshot snapshot_from_underlying(const Graph& g, const std::vector<NodeId>& infected,
                                  std::optional<NodeId> source = std::nullopt);
// Snapshot of an infected tree inside an underlying d-regular graph; nodes listed in
// end_vertices have underlying degree 1, all others d.
Snapshot snapshot_in_regular(const Graph& infected, int d, const std::vector<NodeId>& end_vertices = {});

struct StopRule {
    int target_size = 1;
    // Halt once end vertices reach (num/den)·target_size.
    long long end_fraction_num = 1;
    long long end_fraction_den = 1;
};

Snapshot simulate_si(const Graph& g, NodeId source, const StopRule& rule, uint64_t seed);

// SI spread of n nodes on the infinite d-regular tree, materialised lazily. Local id i is
// the i-th infected node; branch[i] is the source slot (0..d-1) the node descends from,
// -1 for the source itself.
struct RegularTreeSpread {
    Snapshot snapshot;
    std::vector<int> branch;
};
RegularTreeSpread simulate_si_regular_tree(int d, int n, uint64_t seed);

constexpr int kEnumerationCap = 12;
constexpr long long kMaxOrders = 10'000'000;

using Order = std::vector<NodeId>;

// Visits every spreading order from start in lexicographic order. The visitor
// returns false to stop early.
void for_each_spreading_order(const Graph& g, NodeId start, const std::function<bool(const Order&)>& visit);

std::vector<Order> enumerate_spreading_orders(const Snapshot& snap, NodeId start, int cap = kEnumerationCap,
                                              long long max_orders = kMaxOrders);

bool is_spreading_order(const Graph& g, const Order& order);

// Product over steps of (infected neighbours of the new node) / (boundary weight).
Rational spreading_order_probability(const Snapshot& snap, const Order& order);

// Exact joint law of the source's branch sizes (x_1..x_d) after n infections on the
// infinite d-regular tree, by exhaustive enumeration of spread paths.
std::map<std::vector<int>, Rational> regular_tree_branch_law(int d, int n);

// Snapshot JSON: {nodes, edges, underlying_degree, end_vertices, source?}.
std::string snapshot_to_json(const Snapshot& snap);
Snapshot snapshot_from_json(const std::string& text);

}  // namespace srcdet

#endif
