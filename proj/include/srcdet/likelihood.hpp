#ifndef SRCDET_LIKELIHOOD_HPP
#define SRCDET_LIKELIHOOD_HPP

#include <string>
#include <vector>

#include "srcdet/graph.hpp"
#include "srcdet/numeric.hpp"
#include "srcdet/spread.hpp"

namespace srcdet {

struct LikelihoodTable {
    std::vector<Rational> likelihood;  // P(G_n | v)
    std::vector<Rational> posterior;   // normalised under a uniform prior
    std::vector<NodeId> argmax;
};

LikelihoodTable make_likelihood_table(std::vector<Rational> likelihood);

// CSV rows node,numerator,denominator,posterior. ids relabels nodes when non-empty.
std::string likelihood_to_csv(const LikelihoodTable& t, const std::vector<NodeId>& ids = {});
std::string likelihood_to_json(const LikelihoodTable& t, const std::vector<NodeId>& ids = {});

// Sum of order probabilities from every start node. Orders sharing an infected set
// share their continuation, so the sum runs over connected subsets.
LikelihoodTable exact_source_likelihood(const Snapshot& snap, int cap = kEnumerationCap);

// Probability of one order from a degree-d node in which the end vertex is k-th of n;
// k = 1 is an order started at the end vertex.
Rational end_vertex_position_probability(int d, int n, int k);

constexpr int kSubtreeNodeCap = 18;
constexpr long long kSubtreeCountCap = 1'000'000;

// Number of orders from v on a tree snapshot with end vertex ve in position k,
// by enumerating the (k-1)-subtrees that contain v and the parent of ve.
BigInt position_count(const Snapshot& snap, NodeId v, NodeId ve, int k);
// Line v_1..v_n with the end vertex at v_n, source v_i (1-based), i < n.
BigInt position_count_line(int n, int i, int k);

// Line v_1..v_n (entry i-1 is v_i) whose end vertex is v_n.
LikelihoodTable line_likelihood(int d, int n);

// Broom with line v_1..v_{2t} (ids 0..2t-1) and k end vertices (ids 2t..2t+k-1) on v_{2t}.
LikelihoodTable broom_likelihood(int d, int t, int k);

// Probability of one order on a unicyclic snapshot over a d-regular graph in which the
// last cycle vertex is infected k-th of n.
Rational cycle_position_probability(int d, int n, int k);
// Number of orders from v with the last cycle vertex at position k.
BigInt cycle_position_count(const Snapshot& snap, NodeId v, int k);
LikelihoodTable pseudo_tree_likelihood(const Snapshot& snap);

}  // namespace srcdet

#endif
