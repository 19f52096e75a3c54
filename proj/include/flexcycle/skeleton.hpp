#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "flexcycle/error.hpp"

namespace flexcycle {

// Vertex identifiers are opaque strings. Ordering is numeric-aware so that
// meshes named "0".."11" sort the way people expect ("2" < "10").
using Vertex = std::string;

bool vertex_less(const Vertex& a, const Vertex& b);

// Unordered vertex pair, canonically ordered (a <= b under vertex_less).
struct Edge {
    Vertex a;
    Vertex b;

    Edge() = default;
    Edge(Vertex u, Vertex v);

    bool contains(const Vertex& v) const { return v == a || v == b; }
    Vertex other(const Vertex& v) const { return v == a ? b : a; }

    bool operator==(const Edge& rhs) const = default;
    bool operator<(const Edge& rhs) const;

    std::string str() const { return "{" + a + "," + b + "}"; }
};

using Face = std::vector<Vertex>;

struct Violation {
    std::string code;     // stable machine-readable tag
    std::string message;  // human-readable detail naming the edge/face
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

// Combinatorial 2-skeleton: vertex set, face list (cyclic vertex sequences),
// edges derived from faces. Faces are a list, not a set: doubly-covered
// constructions are legal and edge-face incidence counts with multiplicity.
// Construction accepts arbitrary data; validate() reports which invariants
// hold. Immutable after construction.
class Skeleton {
  public:
    Skeleton() = default;
    Skeleton(std::vector<Vertex> vertices, std::vector<Face> faces);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Face>& faces() const { return faces_; }
    const std::set<Edge>& edges() const { return edges_; }

    bool has_vertex(const Vertex& v) const;
    bool has_edge(const Edge& e) const { return edges_.count(e) > 0; }
    bool is_triangular() const;

    // Indices into faces() of the faces incident to e (with multiplicity).
    std::vector<std::size_t> faces_at(const Edge& e) const;

    // Neighbors of v in the derived edge graph, sorted.
    std::vector<Vertex> neighbors(const Vertex& v) const;

    std::string canonical_key() const;  // sorted edge list; flip-state dedup

  private:
    std::vector<Vertex> vertices_;  // sorted by vertex_less; duplicates kept for validate()
    std::vector<Face> faces_;
    std::set<Edge> edges_;
    std::map<Edge, std::vector<std::size_t>> edge_faces_;
};

ValidationReport validate_skeleton(const Skeleton& h);

// Plain vertex-edge graph; the combinatorial search structures (cycle
// enumeration, zero-sum search) work at this level.
struct Graph {
    std::vector<Vertex> vertices;
    std::set<Edge> edges;

    Graph() = default;
    Graph(std::vector<Vertex> v, std::set<Edge> e);
    Graph(const Skeleton& s);  // the skeleton's 1-skeleton

    bool has_edge(const Edge& e) const { return edges.count(e) > 0; }
    std::vector<Vertex> neighbors(const Vertex& v) const;
};

// A skeleton all of whose faces are triangles. Per-edge opposite vertices are
// checked lazily: boundary-style inputs (an edge in a single face) are
// accepted by the type and rejected only by operations that need two faces.
class TriangularSkeleton {
  public:
    TriangularSkeleton() = default;
    explicit TriangularSkeleton(Skeleton skeleton);
    TriangularSkeleton(std::vector<Vertex> vertices, std::vector<Face> faces)
        : TriangularSkeleton(Skeleton(std::move(vertices), std::move(faces))) {}

    const Skeleton& skeleton() const { return skeleton_; }
    const std::vector<Vertex>& vertices() const { return skeleton_.vertices(); }
    const std::vector<Face>& faces() const { return skeleton_.faces(); }
    const std::set<Edge>& edges() const { return skeleton_.edges(); }
    bool has_edge(const Edge& e) const { return skeleton_.has_edge(e); }

    // All opposite vertices of e across its incident triangles, sorted,
    // duplicates kept (a doubly-covered triangle yields the same vertex twice).
    std::vector<Vertex> opposite_vertices(const Edge& e) const;

    // The two opposite vertices; throws unless e lies in exactly two
    // triangles with distinct opposite vertices.
    std::pair<Vertex, Vertex> two_opposites(const Edge& e) const;

  private:
    Skeleton skeleton_;
};

// Edge {w1,w2} with its two opposite vertices, south and north.
struct DistinguishedEdge {
    Edge edge;
    Vertex south;
    Vertex north;

    // Validates that south/north are exactly the two opposite vertices.
    static DistinguishedEdge make(const TriangularSkeleton& t, const Edge& e,
                                  const Vertex& south, const Vertex& north);
};

// Normal form of an undirected cyclic face: rotated to start at the smallest
// vertex, direction chosen so the second vertex is the smaller neighbor.
Face canonical_face(const Face& f);

// Canonicalized faces, sorted; two skeletons describe the same 2-skeleton iff
// these (and the vertex sets) agree.
std::vector<Face> canonical_face_list(const Skeleton& s);

bool same_skeleton(const Skeleton& a, const Skeleton& b);

using AnchorRule = std::function<Vertex(const Face&)>;

// Default fan anchor: smallest vertex identifier in the face.
Vertex min_vertex_anchor(const Face& face);

struct FanTriangulation {
    TriangularSkeleton skeleton;
    std::set<Edge> diagonals;  // edges added by the fan, absent from the input
};

// Vertex-preserving fan triangulation: each face (v0,...,v_{k-1}), rotated so
// the anchor comes first, is replaced by triangles (v0, v_i, v_{i+1}).
FanTriangulation triangulate_fan(const Skeleton& h,
                                 const AnchorRule& anchor = min_vertex_anchor);

}  // namespace flexcycle
