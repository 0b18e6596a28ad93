#ifndef SRCDET_VACCINE_HPP
#define SRCDET_VACCINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "srcdet/graph.hpp"
#include "srcdet/numeric.hpp"

namespace srcdet {

// Sum of squared component sizes of g without the protected nodes.
long long outage_objective(const Graph& g, const std::vector<NodeId>& protect);
// objective / N: the expected failure size when the failure starts at a uniform node.
Rational expected_outage(const Graph& g, const std::vector<NodeId>& protect);

struct CentroidTree {
    NodeId root = 0;
    std::vector<NodeId> parent;      // -1 at the root
    std::vector<int> level;          // root has level 1
    std::vector<int> centrality;     // subtree size in the centroid tree
    std::vector<std::vector<NodeId>> children;
    int height() const;
};

// Lowest-id centroid at every step. Requires a tree.
CentroidTree centroid_decomposition(const Graph& g);

struct ProtectionSet {
    std::string method;
    std::vector<NodeId> nodes;  // in selection order
    long long objective = 0;
};

struct ProtectionOptions {
    // Root of the BFS spanning tree used on graphs with cycles; the lowest-id distance
    // center when unset.
    std::optional<NodeId> bfs_root;
};

// Vaccine centrality descending, then lower level, then lower id.
ProtectionSet select_protection_set(const Graph& g, int k, const ProtectionOptions& opts = {});

constexpr long long kBruteForceCap = 1'000'000;
// Exhaustive minimum; ties keep the lexicographically first set.
ProtectionSet brute_force_protection(const Graph& g, int k);
ProtectionSet degree_heuristic_protection(const Graph& g, int k);

struct BoundReport {
    long long lower = 0;    // min_v max_i C_i^2
    long long optimum = 0;  // min_v sum_i C_i^2
    long long upper = 0;    // (N-1) min_v max_i C_i
    NodeId centroid = 0;
    long long centroid_max = 0;
    long long centroid_sum = 0;
    bool chain_holds = false;
    bool centroid_attains_lower = false;
    bool centroid_attains_optimum = false;
};

BoundReport bound_check(const Graph& g);

// {k, method, protection_set, objective, expected_outage, bound_chain}
// ids, when given, relabels nodes in the output (e.g. back to edge-list ids).
std::string protection_report_json(const Graph& g, const ProtectionSet& set, const std::optional<BoundReport>& bounds,
                                   const std::vector<long long>& ids = {});

}  // namespace srcdet

#endif
