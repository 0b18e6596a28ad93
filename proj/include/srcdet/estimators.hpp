#ifndef SRCDET_ESTIMATORS_HPP
#define SRCDET_ESTIMATORS_HPP

#include <string>
#include <vector>

#include "srcdet/centrality.hpp"
#include "srcdet/spread.hpp"

namespace srcdet {

enum class EstimatorKind { kRumorCenter, kBfsRc, kMultiEndVertex, kSdc, kJordan, kExactMl };

std::string estimator_name(EstimatorKind k);
// Accepts RUMOR_CENTER, BFS_RC, MULTI_END_VERTEX, SDC, JORDAN, EXACT_ML (any case).
EstimatorKind parse_estimator(const std::string& name);

struct Estimate {
    EstimatorKind kind = EstimatorKind::kRumorCenter;
    std::vector<NodeId> suspects;  // sorted
    std::vector<double> scores;    // method score of each suspect
    NodeId representative() const { return suspects.front(); }
};

struct EstimatorOptions {
    // BFS_RC: score every node on one BFS tree rooted at the lowest-id Jordan center
    // instead of rooting a fresh tree at each candidate.
    bool bfs_shared_tree = false;
    SdcLeafRule sdc_rule = SdcLeafRule::kEndVertex;
    int cycle_cap = kDefaultCycleCap;
    int exact_cap = kEnumerationCap;
};

Estimate estimate(const Snapshot& snap, EstimatorKind kind, const EstimatorOptions& opts = {});

// Exact rumor-centrality score of v on the BFS tree of g rooted at v: the product of
// subtree sizes, smaller is better.
BigInt bfs_rumor_denominator(const Graph& g, NodeId v);

struct MultiEndVertexTrace {
    NodeId center = 0;
    std::vector<int> up;            // end vertices in each node's subtree (rooted at center)
    std::vector<char> in_tree;      // membership in t_ML
    Estimate estimate;
};

MultiEndVertexTrace algorithm4_trace(const Snapshot& snap);
Estimate algorithm4_multi_end_vertex(const Snapshot& snap);

// k nodes of largest rumor centrality, ties by lowest id.
Estimate top_k_baseline(const Snapshot& snap, int k);

int estimation_error(const Estimate& est, NodeId truth, const Snapshot& snap);

}  // namespace srcdet

#endif
