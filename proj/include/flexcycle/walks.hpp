#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flexcycle/flip.hpp"
#include "flexcycle/projective.hpp"
#include "flexcycle/skeleton.hpp"

namespace flexcycle {

enum class Color { Red, Blue, Gold };

std::string color_name(Color c);

struct VertexColoring {
    std::map<Vertex, Color> colors;
    Vertex s;                   // the blue base vertex
    std::optional<Edge> seed;   // the red-blue seed edge {w1, s}, when chosen

    Color at(const Vertex& v) const;
};

// Coloring induced by a point assignment on the quadric: red for finite
// points, blue for infinite points whose direction matches s, gold otherwise.
VertexColoring color_vertices(const std::map<Vertex, ProjectivePoint>& rho_infinity,
                              const Vertex& s, double tol = 1e-10);

// Red and blue walks: the same-triangle equivalence class of the seed among
// red-blue edges, projected onto its red respectively blue endpoints.
struct WalkPair {
    std::set<Edge> class_edges;   // the red-blue edges equivalent to the seed
    std::set<Vertex> red_vertices;
    std::set<Edge> red_edges;
    std::set<Vertex> blue_vertices;
    std::set<Edge> blue_edges;
};

WalkPair red_blue_walks(const TriangularSkeleton& t, const VertexColoring& coloring,
                        const Edge& seed);

// Shortest simple cycle through e using only red-walk edges; ties broken
// lexicographically. Throws when the red walk is acyclic through e.
std::vector<Vertex> cycle_in_red_walk(const WalkPair& walk, const Edge& e);

struct RedAchievableResult {
    std::set<Vertex> achievable;
    std::map<Vertex, std::vector<Edge>> witnesses;  // one flip sequence each
    bool truncated = false;
    std::size_t states_explored = 0;
};

// Breadth-first search over the skeletons reachable by flips on currently
// present constant-angle edges; collects every vertex that lands in a red
// walk. Exhaustive below state_cap, flagged truncated above it. Uses the
// coloring's stored seed edge.
RedAchievableResult red_achievable(const TriangularSkeleton& t,
                                   const VertexColoring& coloring,
                                   const std::set<Edge>& e_const,
                                   std::size_t state_cap = 100000);

struct RedConstEdgeReport {
    bool applicable = false;  // both endpoints of e are achievable
    bool pass = true;
    std::string detail;
};

// For e in E_const with both endpoints achievable, neither opposite vertex
// may be achievable; a failure names the degenerate triangle.
RedConstEdgeReport check_red_const_edge(const TriangularSkeleton& t, const Edge& e,
                                        const std::set<Vertex>& achievable);

}  // namespace flexcycle
