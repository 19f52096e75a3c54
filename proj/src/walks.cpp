#include "flexcycle/walks.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace flexcycle {

std::string color_name(Color c) {
    switch (c) {
        case Color::Red: return "red";
        case Color::Blue: return "blue";
        case Color::Gold: return "gold";
    }
    return "?";
}

Color VertexColoring::at(const Vertex& v) const {
    auto it = colors.find(v);
    if (it == colors.end()) {
        throw validation_error("no color for vertex " + v);
    }
    return it->second;
}

VertexColoring color_vertices(const std::map<Vertex, ProjectivePoint>& rho_infinity,
                              const Vertex& s, double tol) {
    auto s_it = rho_infinity.find(s);
    if (s_it == rho_infinity.end()) {
        throw validation_error("rho_infinity has no point for vertex " + s);
    }
    if (classify_point(s_it->second, tol) != PointClass::OnMInfinity) {
        throw validation_error("rho_infinity(" + s + ") is not at infinity");
    }
    if (is_exceptional_infinity(s_it->second, tol)) {
        throw validation_error("rho_infinity(" + s +
                               ") is the exceptional point (0:0:0:1:0)");
    }
    const CVec3 s_dir = s_it->second.normalized().xyz();

    VertexColoring coloring;
    coloring.s = s;
    for (const auto& [v, p] : rho_infinity) {
        const PointClass cls = classify_point(p, tol);
        if (cls == PointClass::OffM) {
            throw validation_error("rho_infinity(" + v + ") is off the quadric");
        }
        if (cls == PointClass::OnMFinite) {
            coloring.colors[v] = Color::Red;
        } else if (!is_exceptional_infinity(p, tol) &&
                   xyz_projectively_equal(p.normalized().xyz(), s_dir, tol)) {
            coloring.colors[v] = Color::Blue;
        } else {
            coloring.colors[v] = Color::Gold;
        }
    }
    return coloring;
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

bool is_red_blue(const VertexColoring& coloring, const Edge& e) {
    const Color ca = coloring.at(e.a);
    const Color cb = coloring.at(e.b);
    return (ca == Color::Red && cb == Color::Blue) ||
           (ca == Color::Blue && cb == Color::Red);
}

Vertex red_end(const VertexColoring& coloring, const Edge& e) {
    return coloring.at(e.a) == Color::Red ? e.a : e.b;
}

Vertex blue_end(const VertexColoring& coloring, const Edge& e) {
    return coloring.at(e.a) == Color::Blue ? e.a : e.b;
}

}  // namespace

WalkPair red_blue_walks(const TriangularSkeleton& t, const VertexColoring& coloring,
                        const Edge& seed) {
    if (!t.has_edge(seed)) {
        throw validation_error("seed edge " + seed.str() + " is not in the skeleton");
    }
    if (!is_red_blue(coloring, seed)) {
        throw validation_error("seed edge " + seed.str() + " is not red-blue");
    }

    std::map<Edge, std::size_t> ids;
    for (const Edge& e : t.edges()) {
        if (is_red_blue(coloring, e)) ids.emplace(e, ids.size());
    }

    UnionFind uf(ids.size());
    for (const Face& f : t.faces()) {
        std::vector<std::size_t> in_face;
        for (std::size_t i = 0; i < 3; ++i) {
            Edge e(f[i], f[(i + 1) % 3]);
            auto it = ids.find(e);
            if (it != ids.end()) in_face.push_back(it->second);
        }
        for (std::size_t i = 1; i < in_face.size(); ++i) {
            uf.unite(in_face[0], in_face[i]);
        }
    }

    const std::size_t seed_class = uf.find(ids.at(seed));
    WalkPair walk;
    for (const auto& [e, id] : ids) {
        if (uf.find(id) == seed_class) {
            walk.class_edges.insert(e);
            walk.red_vertices.insert(red_end(coloring, e));
            walk.blue_vertices.insert(blue_end(coloring, e));
        }
    }

    // A triangle containing two class edges contributes the edge between
    // their remaining endpoints: red-red when the shared vertex is blue,
    // blue-blue when it is red.
    for (const Face& f : t.faces()) {
        std::vector<Edge> in_class;
        for (std::size_t i = 0; i < 3; ++i) {
            Edge e(f[i], f[(i + 1) % 3]);
            if (walk.class_edges.count(e)) in_class.push_back(e);
        }
        if (in_class.size() != 2) continue;
        const Vertex r1 = red_end(coloring, in_class[0]);
        const Vertex r2 = red_end(coloring, in_class[1]);
        const Vertex b1 = blue_end(coloring, in_class[0]);
        const Vertex b2 = blue_end(coloring, in_class[1]);
        if (r1 != r2) {
            walk.red_edges.insert(Edge(r1, r2));
        } else {
            walk.blue_edges.insert(Edge(b1, b2));
        }
    }
    return walk;
}

std::vector<Vertex> cycle_in_red_walk(const WalkPair& walk, const Edge& e) {
    if (!walk.red_edges.count(e)) {
        throw validation_error("edge " + e.str() + " is not in the red walk");
    }

    // Shortest path from e.b back to e.a without the edge e itself; breadth-
    // first over sorted neighbors, then a greedy smallest-vertex descent for
    // the lexicographic tie-break.
    std::map<Vertex, std::vector<Vertex>> adj;
    for (const Edge& re : walk.red_edges) {
        if (re == e) continue;
        adj[re.a].push_back(re.b);
        adj[re.b].push_back(re.a);
    }
    for (auto& [v, nbrs] : adj) {
        std::sort(nbrs.begin(), nbrs.end(), vertex_less);
    }

    std::map<Vertex, std::size_t> dist;
    std::deque<Vertex> queue;
    dist[e.a] = 0;
    queue.push_back(e.a);
    while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        for (const Vertex& w : adj[v]) {
            if (!dist.count(w)) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    if (!dist.count(e.b)) {
        throw validation_error("red walk is acyclic through " + e.str());
    }

    std::vector<Vertex> cycle = {e.a, e.b};
    Vertex current = e.b;
    while (dist.at(current) > 1) {
        for (const Vertex& w : adj[current]) {
            if (dist.count(w) && dist.at(w) + 1 == dist.at(current)) {
                cycle.push_back(w);
                current = w;
                break;
            }
        }
    }
    return cycle;
}

RedAchievableResult red_achievable(const TriangularSkeleton& t,
                                   const VertexColoring& coloring,
                                   const std::set<Edge>& e_const,
                                   std::size_t state_cap) {
    if (!coloring.seed) {
        throw validation_error("red_achievable needs the coloring's seed edge {w1,s}");
    }
    const Edge seed = *coloring.seed;

    struct State {
        TriangularSkeleton skeleton;
        std::vector<Edge> flips;
    };

    RedAchievableResult result;
    std::set<std::string> seen;
    std::deque<State> queue;
    queue.push_back({t, {}});
    seen.insert(t.skeleton().canonical_key());

    while (!queue.empty()) {
        if (result.states_explored >= state_cap) {
            result.truncated = true;
            break;
        }
        State state = std::move(queue.front());
        queue.pop_front();
        ++result.states_explored;

        if (state.skeleton.has_edge(seed) && is_red_blue(coloring, seed)) {
            const WalkPair walk = red_blue_walks(state.skeleton, coloring, seed);
            for (const Vertex& v : walk.red_vertices) {
                if (result.achievable.insert(v).second) {
                    result.witnesses[v] = state.flips;
                }
            }
        }

        for (const Edge& f : e_const) {
            if (!state.skeleton.has_edge(f)) continue;
            TriangularSkeleton flipped;
            try {
                flipped = flip(state.skeleton, f);
            } catch (const Error&) {
                continue;  // illegal flip in this state
            }
            const std::string key = flipped.skeleton().canonical_key();
            if (seen.insert(key).second) {
                auto flips = state.flips;
                flips.push_back(f);
                queue.push_back({std::move(flipped), std::move(flips)});
            }
        }
    }
    return result;
}

RedConstEdgeReport check_red_const_edge(const TriangularSkeleton& t, const Edge& e,
                                        const std::set<Vertex>& achievable) {
    RedConstEdgeReport report;
    if (!achievable.count(e.a) || !achievable.count(e.b)) {
        report.applicable = false;
        report.pass = true;
        report.detail = "vacuous: not both endpoints of " + e.str() + " are achievable";
        return report;
    }
    report.applicable = true;
    auto [u1, u2] = t.two_opposites(e);
    for (const Vertex& u : {u1, u2}) {
        if (achievable.count(u)) {
            report.pass = false;
            report.detail = "opposite vertex " + u + " of " + e.str() +
                            " is achievable: triangle (" + e.a + "," + e.b + "," + u +
                            ") would be degenerate";
            return report;
        }
    }
    report.pass = true;
    report.detail = "neither opposite vertex of " + e.str() + " is achievable";
    return report;
}

}  // namespace flexcycle
