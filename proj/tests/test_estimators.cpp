#include <algorithm>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "srcdet/estimators.hpp"
#include "srcdet/generators.hpp"

using namespace srcdet;

namespace {

const EstimatorKind kAll[] = {EstimatorKind::kRumorCenter, EstimatorKind::kBfsRc,  EstimatorKind::kMultiEndVertex,
                              EstimatorKind::kSdc,         EstimatorKind::kJordan, EstimatorKind::kExactMl};

Snapshot tree_with_ends(int n, int d, int ends, std::mt19937_64& rng) {
    Graph g = oracle::random_bounded_tree(n, d, rng);
    std::vector<NodeId> leaves;
    for (NodeId v = 0; v < n; ++v) {
        if (g.degree(v) == 1) {
            leaves.push_back(v);
        }
    }
    std::shuffle(leaves.begin(), leaves.end(), rng);
    leaves.resize(std::min<std::size_t>(leaves.size(), ends));
    return snapshot_in_regular(g, d, leaves);
}

bool connected_within(const Graph& g, const std::vector<char>& keep) {
    std::vector<NodeId> nodes;
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (keep[v]) {
            nodes.push_back(static_cast<NodeId>(v));
        }
    }
    return is_connected(induced_subgraph(g, nodes));
}

}  // namespace

TEST_CASE("estimator names round-trip") {
    for (auto k : kAll) {
        CHECK(parse_estimator(estimator_name(k)) == k);
    }
    CHECK(parse_estimator("bfs-rc") == EstimatorKind::kBfsRc);
    CHECK_THROWS_AS(parse_estimator("DYNAMICAL_AGE"), std::invalid_argument);
}

TEST_CASE("single node snapshot") {
    Snapshot s = snapshot_in_regular(Graph::from_edges(1, {}), 3);
    for (auto k : kAll) {
        Estimate e = estimate(s, k);
        CHECK(e.suspects == std::vector<NodeId>{0});
        CHECK(e.representative() == 0);
    }
}

TEST_CASE("rumor center is the maximum likelihood source without end vertices") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng() % 9);
        int d = 3 + static_cast<int>(rng() % 2);
        Snapshot s = tree_with_ends(n, d, 0, rng);
        Estimate rc = estimate(s, EstimatorKind::kRumorCenter);
        CHECK(rc.suspects == estimate(s, EstimatorKind::kExactMl).suspects);
        CHECK(rc.suspects == estimate(s, EstimatorKind::kBfsRc).suspects);
        CHECK(estimate(s, EstimatorKind::kMultiEndVertex).suspects == std::vector<NodeId>{rc.representative()});
    }
}

TEST_CASE("end vertex pulls the likelihood away from the rumor center") {
    Graph g = Graph::from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}});
    Snapshot s = snapshot_in_regular(g, 3, {4});
    CHECK(estimate(s, EstimatorKind::kRumorCenter).suspects == std::vector<NodeId>{0});
    CHECK(estimate(s, EstimatorKind::kExactMl).suspects == std::vector<NodeId>{4});
    // Multi-end-vertex estimate: t_ML = 0 -> 1 -> 4, so kappa = {v_c, parent(4)}.
    CHECK(estimate(s, EstimatorKind::kMultiEndVertex).suspects == std::vector<NodeId>{0, 1});
    CHECK_THROWS_AS(estimate(snapshot_in_regular(generate({.family = Family::kLine, .n = 13}), 3), EstimatorKind::kExactMl),
                    SizeLimitError);
}

TEST_CASE("multi end vertex message passing") {
    // Center 0 with branches carrying 1, 2 and 3 end vertices.
    // Branch a: 1-4 (end 4). Branch b: 2-5, 5-{6,7} (ends 6, 7). Branch c: 3-8, 8-{9,10}, 9-{11,12}, 10-13
    // with ends 11, 12, 13. Balanced by padding branches a and b so 0 stays the rumor center.
    std::vector<Edge> e{{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 5}, {5, 6}, {5, 7}, {3, 8}, {8, 9},
                        {8, 10}, {9, 11}, {9, 12}, {10, 13}, {1, 14}, {14, 15}, {15, 16}, {2, 17}, {17, 18}};
    Graph g = Graph::from_edges(19, e);
    Snapshot s = snapshot_in_regular(g, 4, {4, 6, 7, 11, 12, 13});
    auto tr = algorithm4_trace(s);
    REQUIRE(tr.center == 0);
    CHECK(tr.up[1] == 1);
    CHECK(tr.up[2] == 2);
    CHECK(tr.up[3] == 3);
    CHECK(std::max({tr.up[1], tr.up[2], tr.up[3]}) == 3);
    std::vector<NodeId> in_ml;
    for (NodeId v = 0; v < 19; ++v) {
        if (tr.in_tree[v]) {
            in_ml.push_back(v);
        }
    }
    CHECK(in_ml == std::vector<NodeId>{0, 3, 8, 9, 11, 12});
    CHECK(tr.estimate.suspects == std::vector<NodeId>{0, 9});

    // Two mirrored branches with equal end counts: both are kept.
    Graph sym = Graph::from_edges(7, {{0, 1}, {0, 2}, {1, 3}, {2, 4}, {0, 5}, {5, 6}});
    auto st = algorithm4_trace(snapshot_in_regular(sym, 3, {3, 4}));
    CHECK(st.in_tree[1]);
    CHECK(st.in_tree[2]);
    CHECK(!st.in_tree[5]);
    CHECK(st.estimate.suspects == std::vector<NodeId>{0, 1, 2});
}

TEST_CASE("multi end vertex structure on random trees") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 3 + static_cast<int>(rng() % 40);
        Snapshot s = tree_with_ends(n, 3 + static_cast<int>(rng() % 3), 1 + static_cast<int>(rng() % 5), rng);
        auto tr = algorithm4_trace(s);
        CHECK(connected_within(s.graph, tr.in_tree));
        for (NodeId v : tr.estimate.suspects) {
            CHECK(tr.in_tree[v]);
        }
        if (s.end_vertex_count() == 1) {
            NodeId ve = s.end_vertices().front();
            auto dc = bfs_distances(s.graph, tr.center);
            auto de = bfs_distances(s.graph, ve);
            for (NodeId v : tr.estimate.suspects) {
                CHECK(dc[v] + de[v] == dc[ve]);
            }
        }
    }
}

TEST_CASE("estimation error") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng() % 30);
        Snapshot s = tree_with_ends(n, 4, 2, rng);
        Estimate e = algorithm4_multi_end_vertex(s);
        NodeId truth = static_cast<NodeId>(rng() % n);
        NodeId other = static_cast<NodeId>(rng() % n);
        int err = estimation_error(e, truth, s);
        bool contains = std::find(e.suspects.begin(), e.suspects.end(), truth) != e.suspects.end();
        CHECK((err == 0) == contains);
        CHECK(err <= estimation_error(e, other, s) + bfs_distances(s.graph, truth)[other]);
        Estimate nb;
        nb.suspects = {s.graph.neighbors(truth).empty() ? truth : s.graph.neighbors(truth).front()};
        CHECK(estimation_error(nb, truth, s) == (s.graph.neighbors(truth).empty() ? 0 : 1));
    }
    Snapshot line = snapshot_in_regular(generate({.family = Family::kLine, .n = 4}), 3);
    CHECK_THROWS_AS(estimation_error(estimate(line, EstimatorKind::kJordan), 7, line), std::invalid_argument);
}

TEST_CASE("top-k baseline") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng() % 30);
        Snapshot s = tree_with_ends(n, 4, 1, rng);
        CHECK(top_k_baseline(s, 1).suspects == std::vector<NodeId>{rumor_center(s.graph).front()});
        Estimate all = top_k_baseline(s, n);
        CHECK(all.suspects.size() == static_cast<std::size_t>(n));
        CHECK(estimation_error(all, static_cast<NodeId>(rng() % n), s) == 0);
    }
    // Star: hub first, then leaves by id.
    Snapshot star = snapshot_in_regular(generate({.family = Family::kStar, .n = 5}), 4);
    CHECK(top_k_baseline(star, 3).suspects == std::vector<NodeId>{0, 1, 2});
    CHECK_THROWS_AS(top_k_baseline(star, 6), std::invalid_argument);
}

TEST_CASE("estimators on graphs with cycles") {
    Graph grid = generate({.family = Family::kGrid, .width = 5, .height = 5});
    Snapshot s = snapshot_from_underlying(grid, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14});
    Estimate candidate = estimate(s, EstimatorKind::kBfsRc);
    EstimatorOptions shared;
    shared.bfs_shared_tree = true;
    Estimate one_tree = estimate(s, EstimatorKind::kBfsRc, shared);
    CHECK(candidate.suspects == std::vector<NodeId>{7});
    CHECK(!one_tree.suspects.empty());
    CHECK(estimate(s, EstimatorKind::kJordan).suspects == std::vector<NodeId>{7});
    CHECK(!estimate(s, EstimatorKind::kSdc).suspects.empty());
    CHECK_THROWS_AS(estimate(s, EstimatorKind::kRumorCenter), GraphError);
    CHECK_THROWS_AS(estimate(s, EstimatorKind::kMultiEndVertex), GraphError);
}
