#ifndef SRCDET_CENTRALITY_HPP
#define SRCDET_CENTRALITY_HPP

#include <vector>

#include "srcdet/graph.hpp"
#include "srcdet/numeric.hpp"
#include "srcdet/spread.hpp"

namespace srcdet {

enum class Regime { kExactRational, kBigInteger, kLogReal, kReal };
enum class Extremum { kArgmax, kArgmin };

std::string regime_name(Regime r);

/*
 * Per-node scores with the extremum set. Exact regimes compare exactly; the real
 * regimes treat values within `tolerance` of the best as tied.
 */
struct ScoreTable {
    Regime regime = Regime::kExactRational;
    Extremum kind = Extremum::kArgmax;
    std::vector<Rational> exact;  // filled in the exact regimes
    std::vector<double> value;    // log score, real score, or a double view of exact
    std::vector<NodeId> extremum;
    double tolerance = 1e-9;

    std::size_t size() const { return value.size(); }
    bool is_extremum(NodeId v) const;
    // Lowest-id member of the extremum set.
    NodeId representative() const { return extremum.front(); }
};

ScoreTable make_exact_table(std::vector<Rational> scores, Extremum kind, Regime regime = Regime::kExactRational);
ScoreTable make_real_table(std::vector<double> scores, Extremum kind, Regime regime = Regime::kReal,
                           double tolerance = 1e-9);

constexpr int kExactRumorLimit = 150;
constexpr int kExactBetweennessLimit = 1000;

ScoreTable distance_centrality(const Graph& g);
ScoreTable betweenness_centrality(const Graph& g);

// out[v][i] = M^{v -> neighbors(v)[i]}, the size of v's side of that tree edge.
struct MessageField {
    std::vector<std::vector<int>> out;
    int message(const Graph& g, NodeId from, NodeId to) const;
};

struct CentroidResult {
    ScoreTable weights;  // branch weight, argmin
    MessageField messages;
    std::vector<NodeId> centroids;
};

CentroidResult centroid_by_message_passing(const Graph& g, NodeId root = 0);

// Exact big integers up to kExactRumorLimit nodes, log scores above (or when forced).
ScoreTable rumor_centrality_tree(const Graph& g, bool force_log = false);
std::vector<NodeId> rumor_center(const Graph& g);

struct EpidemicResult {
    ScoreTable table;                 // |M(v, G)| as exact integers
    std::vector<NodeId> center;       // epidemic center estimate
    bool resolved_by_branch_condition = false;
};

// Ratio-table evaluation over the cycle, propagated across bridges.
EpidemicResult epidemic_centrality_unicyclic(const Graph& g);
// Sum of tree rumor centralities over the h spanning trees.
ScoreTable epidemic_centrality_by_spanning_trees(const Graph& g);

std::vector<int> eccentricities(const Graph& g);
std::vector<NodeId> jordan_center(const Graph& g);

// Which nodes count as size-1 cycles: end vertices (leaves of G), or every node of
// degree 1 in the snapshot.
enum class SdcLeafRule { kEndVertex, kSnapshotLeaf };

// w_u = C(u)/(C(u)+1), with w = 1 for nodes on no cycle within the cap.
std::vector<Rational> sdc_weights(const Snapshot& snap, int cap = kDefaultCycleCap,
                                  SdcLeafRule rule = SdcLeafRule::kEndVertex);
ScoreTable sdc_scores(const Snapshot& snap, int cap = kDefaultCycleCap, SdcLeafRule rule = SdcLeafRule::kEndVertex);

struct SparseRow {
    std::vector<NodeId> cols;
    std::vector<double> probs;
};

// Rumor Markov chain on a tree: P_ij = t_j^i / (c (n-1)) on edges, residual on the diagonal.
std::vector<SparseRow> rumor_markov_transitions(const Graph& g, double c);

struct StationaryResult {
    ScoreTable table;  // stationary probabilities, argmax
    int iterations = 0;
    double last_change = 0.0;
};

StationaryResult rumor_markov_stationary(const Graph& g, double c, double tol = 1e-14, int max_iter = 1000000);

}  // namespace srcdet

#endif
