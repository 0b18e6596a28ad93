#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "instances.hpp"
#include "oracles.hpp"
#include "srcdet/centrality.hpp"
#include "srcdet/generators.hpp"
#include "srcdet/vaccine.hpp"

using namespace srcdet;
using instance::barbell;
using instance::binary7;
using instance::spider;

namespace {

// Centre 0 with branches of sizes 1, 2 (path), 3 (path hung at its middle) and 6.
Graph g13() {
    return Graph::from_edges(13, {{0, 1},                            // singleton branch
                                  {0, 2}, {2, 3},                    // 2-path
                                  {0, 4}, {4, 5}, {4, 6},            // 3-path by its middle
                                  {0, 7}, {7, 8}, {8, 9}, {7, 10}, {7, 11}, {7, 12}});
}

}  // namespace

TEST_CASE("expected outage") {
    Graph t = binary7();
    CHECK(expected_outage(t, {0}) == Rational(18, 7));
    CHECK(outage_objective(t, {0}) == 18);
    CHECK(expected_outage(t, {0, 1, 2, 3, 4, 5, 6}) == 0);
    CHECK(expected_outage(t, {}) == 7);
    Graph line5 = generate({.family = Family::kLine, .n = 5});
    CHECK(outage_objective(line5, {2}) == 8);
}

TEST_CASE("rooted tree enumerator") {
    const int counts[] = {0, 1, 1, 2, 4, 9, 20, 48, 115, 286, 719};
    for (int n = 1; n <= 10; ++n) {
        int c = 0;
        oracle::for_each_rooted_tree(n, [&](const Graph& g) {
            CHECK(is_tree(g));
            ++c;
        });
        CHECK(c == counts[n]);
    }
}

TEST_CASE("centroid decomposition") {
    Graph line7 = generate({.family = Family::kLine, .n = 7});
    CentroidTree ct = centroid_decomposition(line7);
    CHECK(ct.root == 3);
    CHECK(ct.children[3] == std::vector<NodeId>{1, 5});
    CHECK(ct.level[1] == 2);
    CHECK(ct.centrality[3] == 7);
    CHECK(ct.centrality[5] == 3);

    CentroidTree big = centroid_decomposition(g13());
    CHECK(big.root == 0);
    CHECK(big.children[0] == std::vector<NodeId>{1, 2, 4, 7});
    CHECK(big.centrality[2] == 2);
    CHECK(big.centrality[4] == 3);
    CHECK(big.centrality[7] == 6);
    CHECK(big.children[7] == std::vector<NodeId>{8, 10, 11, 12});
    CHECK(big.centrality[8] == 2);
    CHECK(big.level[9] == 4);
    ProtectionSet two = select_protection_set(g13(), 2);
    CHECK(two.nodes == std::vector<NodeId>{0, 7});

    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + static_cast<int>(rng() % 200);
        Graph g = oracle::random_tree(n, rng);
        CentroidTree c = centroid_decomposition(g);
        CHECK(c.centrality[c.root] == n);
        CHECK(c.root == centroid_by_message_passing(g).centroids.front());
        CHECK(c.height() <= std::log2(static_cast<double>(n)) + 1 + 1e-12);
        std::vector<int> seen(n, 0);
        for (NodeId v = 0; v < n; ++v) {
            ++seen[v];
            CHECK(c.centrality[v] <= n / std::pow(2.0, c.level[v] - 1) + 1e-12);
            int below = 1;
            for (NodeId ch : c.children[v]) {
                below += c.centrality[ch];
                CHECK(c.parent[ch] == v);
                CHECK(c.level[ch] == c.level[v] + 1);
            }
            CHECK(below == c.centrality[v]);
        }
        CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
    }
    CHECK_THROWS_AS(centroid_decomposition(generate({.family = Family::kCirculant, .n = 5, .connections = {1}})), GraphError);
}

TEST_CASE("protection selection") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 60);
        Graph g = oracle::random_tree(n, rng);
        CHECK(select_protection_set(g, 1).nodes == std::vector<NodeId>{centroid_decomposition(g).root});
        long long prev = outage_objective(g, {});
        for (int k = 1; k <= n; ++k) {
            ProtectionSet s = select_protection_set(g, k);
            CHECK(s.nodes.size() == static_cast<std::size_t>(k));
            CHECK(s.objective == outage_objective(g, s.nodes));
            CHECK(s.objective <= prev);
            prev = s.objective;
        }
        CHECK(prev == 0);
        CHECK(degree_heuristic_protection(g, n).objective == 0);
    }
    Graph star = generate({.family = Family::kStar, .n = 6});
    CHECK(degree_heuristic_protection(star, 1).nodes == std::vector<NodeId>{0});
    CHECK(brute_force_protection(generate({.family = Family::kLine, .n = 5}), 1).nodes == std::vector<NodeId>{2});
    CHECK_THROWS_AS(select_protection_set(star, 0), std::invalid_argument);
    CHECK_THROWS_AS(select_protection_set(star, 7), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_protection(generate({.family = Family::kLine, .n = 40}), 10), std::invalid_argument);

    // Graphs with cycles go through a BFS spanning tree; the objective is still on g.
    Graph grid = generate({.family = Family::kGrid, .width = 4, .height = 4});
    ProtectionSet gs = select_protection_set(grid, 3);
    CHECK(gs.objective == outage_objective(grid, gs.nodes));
    ProtectionOptions rooted;
    rooted.bfs_root = 0;
    CHECK(select_protection_set(grid, 3, rooted).nodes.size() == 3);
}

TEST_CASE("approximation ratio on every tree up to 14 nodes") {
    long long trees = 0;
    for (int n = 2; n <= 14; ++n) {
        oracle::for_each_rooted_tree(n, [&](const Graph& g) {
            ++trees;
            for (int k = 1; k <= std::min(3, n - 1); ++k) {
                long long alg = select_protection_set(g, k).objective;
                long long opt = brute_force_protection(g, k).objective;
                const double c = static_cast<double>(k) / n;
                CHECK(alg >= opt);
                CHECK(static_cast<double>(alg) <= 2.0 / (c * (1.0 - c)) * static_cast<double>(opt));
            }
        });
    }
    CHECK(trees == 53271);
}

TEST_CASE("spider centroid is optimal") {
    std::mt19937_64 rng(5);
    int used = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<int> legs(3 + rng() % 4);
        for (int& l : legs) {
            l = 1 + static_cast<int>(rng() % 6);
        }
        Graph g = spider(legs);
        if (centroid_by_message_passing(g).centroids.front() != 0) {
            continue;
        }
        ++used;
        CHECK(outage_objective(g, {0}) == brute_force_protection(g, 1).objective);
    }
    CHECK(used > 100);
}

TEST_CASE("betweenness center is the single-node optimum") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng() % 13);
        Graph g = oracle::random_tree(n, rng);
        ScoreTable b = betweenness_centrality(g);
        long long opt = brute_force_protection(g, 1).objective;
        std::vector<NodeId> optimal;
        for (NodeId v = 0; v < n; ++v) {
            if (outage_objective(g, {v}) == opt) {
                optimal.push_back(v);
            }
        }
        CHECK(optimal == b.extremum);
    }
}

TEST_CASE("bound chain") {
    BoundReport line = bound_check(generate({.family = Family::kLine, .n = 7}));
    CHECK(line.lower == 9);
    CHECK(line.optimum == 18);
    CHECK(line.upper == 18);
    CHECK(line.chain_holds);
    BoundReport star = bound_check(generate({.family = Family::kStar, .n = 7}));
    CHECK(star.lower == 1);
    CHECK(star.optimum == 6);
    CHECK(star.upper == 6);
    CHECK(star.centroid == 0);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        Graph g = oracle::random_tree(1 + static_cast<int>(rng() % 50), rng);
        BoundReport r = bound_check(g);
        CHECK(r.chain_holds);
        CHECK(r.centroid_attains_lower);
    }
}

TEST_CASE("degree heuristic on two trees joined by a long path") {
    for (int t : {20, 50, 120}) {
        Graph g = barbell(t);
        const long long n = static_cast<long long>(g.size());
        ProtectionSet deg = degree_heuristic_protection(g, 1);
        ProtectionSet alg = select_protection_set(g, 1);
        CHECK(deg.nodes == std::vector<NodeId>{0});
        CHECK(alg.objective < deg.objective);
        CHECK(alg.objective == brute_force_protection(g, 1).objective);
        for (int k = 1; k <= 12; ++k) {
            CHECK(select_protection_set(g, k).objective <= 2 * n * n / (k + 1));
        }
    }
}

TEST_CASE("report json") {
    Graph t = binary7();
    std::string j = protection_report_json(t, select_protection_set(t, 1), bound_check(t));
    CHECK(j.find("\"expected_outage\": \"18/7\"") != std::string::npos);
    CHECK(j.find("\"protection_set\": [\n    0\n  ]") != std::string::npos);
    CHECK(j.find("\"holds\": true") != std::string::npos);
}
