#ifndef SRCDET_GENERATORS_HPP
#define SRCDET_GENERATORS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "srcdet/graph.hpp"

namespace srcdet {

enum class Family {
    kLine,
    kRegularTree,
    kBroom,
    kStar,
    kGrid,
    kCirculant,
    kRandomRegular,
    kBarabasiAlbert,
    kRandomBoundedDegreeTree,
};

std::string family_name(Family f);
Family parse_family(const std::string& name);

struct GeneratorSpec {
    Family family = Family::kLine;
    int n = 0;           // node count (line, star, regular_tree, circulant, random families)
    int d = 0;           // degree (regular_tree, random_regular)
    int depth = 0;       // regular_tree: full tree of this depth when > 0
    int width = 0;       // grid
    int height = 0;      // grid
    int t = 0;           // broom: line of 2t nodes
    int k = 0;           // broom: pendant end vertices
    int m = 0;           // barabasi_albert attachment count
    int max_degree = 0;  // random_bounded_degree_tree: d_m
    std::vector<int> connections;  // circulant S
    uint64_t seed = 0;
};

/*
 * Node layouts:
 *   line      0-1-...-(n-1)
 *   regular_tree  BFS numbering from root 0; root has d children, others d-1
 *   broom     line 0..2t-1, pendants 2t..2t+k-1 attached to 2t-1
 *   star      hub 0, leaves 1..n-1
 *   grid      node r*width + c
 */
Graph generate(const GeneratorSpec& spec);

}  // namespace srcdet

#endif
