#include "srcdet/generators.hpp"

#include <algorithm>
#include <set>

#include "srcdet/rng.hpp"

namespace srcdet {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) {
        throw GraphError("invalid generator spec: " + msg);
    }
}

Graph line(int n) {
    require(n >= 1, "line needs n >= 1");
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < n; ++i) {
        edges.emplace_back(i, i + 1);
    }
    return Graph::from_edges(n, edges);
}

Graph regular_tree(int d, int n, int depth) {
    require(d >= 2, "regular_tree needs d >= 2");
    if (depth > 0) {
        long long total = 1;
        long long level = 1;
        for (int l = 1; l <= depth; ++l) {
            level *= (l == 1 ? d : d - 1);
            total += level;
            require(total <= 50'000'000, "regular_tree too large");
        }
        n = static_cast<int>(total);
    }
    require(n >= 1, "regular_tree needs n >= 1 or depth >= 1");
    std::vector<Edge> edges;
    int next = 1;
    for (int u = 0; next < n; ++u) {
        int kids = u == 0 ? d : d - 1;
        for (int c = 0; c < kids && next < n; ++c) {
            edges.emplace_back(u, next++);
        }
    }
    return Graph::from_edges(n, edges);
}

Graph broom(int t, int k) {
    require(t >= 1 && k >= 1, "broom needs t >= 1 and k >= 1");
    int n = 2 * t + k;
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < 2 * t; ++i) {
        edges.emplace_back(i, i + 1);
    }
    for (int j = 0; j < k; ++j) {
        edges.emplace_back(2 * t - 1, 2 * t + j);
    }
    return Graph::from_edges(n, edges);
}

Graph star(int n) {
    require(n >= 1, "star needs n >= 1");
    std::vector<Edge> edges;
    for (int i = 1; i < n; ++i) {
        edges.emplace_back(0, i);
    }
    return Graph::from_edges(n, edges);
}

Graph grid(int w, int h) {
    require(w >= 1 && h >= 1, "grid needs positive width and height");
    std::vector<Edge> edges;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            int v = r * w + c;
            if (c + 1 < w) {
                edges.emplace_back(v, v + 1);
            }
            if (r + 1 < h) {
                edges.emplace_back(v, v + w);
            }
        }
    }
    return Graph::from_edges(static_cast<std::size_t>(w) * h, edges);
}

Graph circulant(int n, std::vector<int> s) {
    require(n >= 3, "circulant needs n >= 3");
    require(!s.empty(), "circulant needs a connection set");
    std::sort(s.begin(), s.end());
    require(std::adjacent_find(s.begin(), s.end()) == s.end(), "repeated connection");
    std::vector<Edge> edges;
    for (int step : s) {
        require(step >= 1 && 2 * step <= n, "connection outside [1, n/2]");
        // s = n/2 joins antipodal pairs: one edge per pair.
        int count = 2 * step == n ? n / 2 : n;
        for (int i = 0; i < count; ++i) {
            int j = (i + step) % n;
            edges.emplace_back(std::min(i, j), std::max(i, j));
        }
    }
    return Graph::from_edges(n, edges);
}

Graph random_regular(int n, int d, uint64_t seed) {
    require(n >= 1 && d >= 0 && d < n, "random_regular needs 0 <= d < n");
    require((static_cast<long long>(n) * d) % 2 == 0, "random_regular needs n*d even");
    for (uint64_t attempt = 0; attempt < 100000; ++attempt) {
        CounterRng rng(derive_seed(seed, attempt));
        std::vector<int> points;
        points.reserve(static_cast<std::size_t>(n) * d);
        for (int v = 0; v < n; ++v) {
            for (int j = 0; j < d; ++j) {
                points.push_back(v);
            }
        }
        // Fisher-Yates with the counter stream, then pair consecutive points.
        for (std::size_t i = points.size(); i > 1; --i) {
            std::size_t j = rng.below(i);
            std::swap(points[i - 1], points[j]);
        }
        std::set<Edge> seen;
        bool ok = true;
        std::vector<Edge> edges;
        for (std::size_t i = 0; i + 1 < points.size(); i += 2) {
            int a = std::min(points[i], points[i + 1]);
            int b = std::max(points[i], points[i + 1]);
            if (a == b || !seen.insert({a, b}).second) {
                ok = false;
                break;
            }
            edges.emplace_back(a, b);
        }
        if (ok) {
            return Graph::from_edges(n, edges);
        }
    }
    throw GraphError("random_regular: too many rejected pairings");
}

Graph barabasi_albert(int n, int m, uint64_t seed) {
    require(m >= 1 && n > m, "barabasi_albert needs 1 <= m < n");
    CounterRng rng(seed);
    std::vector<Edge> edges;
    std::vector<int> ends;  // each node repeated once per incident edge
    for (int i = 0; i <= m; ++i) {
        for (int j = i + 1; j <= m; ++j) {
            edges.emplace_back(i, j);
            ends.push_back(i);
            ends.push_back(j);
        }
    }
    for (int v = m + 1; v < n; ++v) {
        std::vector<int> targets;
        while (static_cast<int>(targets.size()) < m) {
            int u = ends[rng.below(ends.size())];
            if (std::find(targets.begin(), targets.end(), u) == targets.end()) {
                targets.push_back(u);
            }
        }
        std::sort(targets.begin(), targets.end());
        for (int u : targets) {
            edges.emplace_back(u, v);
            ends.push_back(u);
            ends.push_back(v);
        }
    }
    return Graph::from_edges(n, edges);
}

// Each processed node draws i in [0, d_m] children; the last frontier node draws at
// least one so that growth reaches exactly n nodes.
Graph random_bounded_degree_tree(int n, int dm, uint64_t seed) {
    require(n >= 1 && dm >= 1, "random_bounded_degree_tree needs n >= 1, d_m >= 1");
    CounterRng rng(seed);
    std::vector<Edge> edges;
    int next = 1;
    for (int u = 0; next < n; ++u) {
        int lo = (u + 1 == next) ? 1 : 0;
        int kids = lo + static_cast<int>(rng.below(static_cast<uint64_t>(dm - lo + 1)));
        for (int c = 0; c < kids && next < n; ++c) {
            edges.emplace_back(u, next++);
        }
    }
    return Graph::from_edges(n, edges);
}

}  // namespace

std::string family_name(Family f) {
    switch (f) {
        case Family::kLine: return "line";
        case Family::kRegularTree: return "regular_tree";
        case Family::kBroom: return "broom";
        case Family::kStar: return "star";
        case Family::kGrid: return "grid";
        case Family::kCirculant: return "circulant";
        case Family::kRandomRegular: return "random_regular";
        case Family::kBarabasiAlbert: return "barabasi_albert";
        case Family::kRandomBoundedDegreeTree: return "random_bounded_degree_tree";
    }
    return "unknown";
}

Family parse_family(const std::string& name) {
    for (Family f : {Family::kLine, Family::kRegularTree, Family::kBroom, Family::kStar, Family::kGrid,
                     Family::kCirculant, Family::kRandomRegular, Family::kBarabasiAlbert,
                     Family::kRandomBoundedDegreeTree}) {
        if (family_name(f) == name) {
            return f;
        }
    }
    throw GraphError("unknown graph family: " + name);
}

Graph generate(const GeneratorSpec& spec) {
    switch (spec.family) {
        case Family::kLine: return line(spec.n);
        case Family::kRegularTree: return regular_tree(spec.d, spec.n, spec.depth);
        case Family::kBroom: return broom(spec.t, spec.k);
        case Family::kStar: return star(spec.n);
        case Family::kGrid: return grid(spec.width, spec.height);
        case Family::kCirculant: return circulant(spec.n, spec.connections);
        case Family::kRandomRegular: return random_regular(spec.n, spec.d, spec.seed);
        case Family::kBarabasiAlbert: return barabasi_albert(spec.n, spec.m, spec.seed);
        case Family::kRandomBoundedDegreeTree: return random_bounded_degree_tree(spec.n, spec.max_degree, spec.seed);
    }
    throw GraphError("unknown graph family");
}

}  // namespace srcdet
