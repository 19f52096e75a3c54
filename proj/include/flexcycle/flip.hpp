#pragma once

#include <set>
#include <string>
#include <vector>

#include "flexcycle/flex.hpp"
#include "flexcycle/skeleton.hpp"

namespace flexcycle {

// Skeleton augmented with every vertex pair at constant distance along a flex.
struct AugmentedGraph {
    std::vector<Vertex> vertices;
    std::set<Edge> edges;

    bool has_edge(const Edge& e) const { return edges.count(e) > 0; }
};

// Replaces edge e = {v1, v2} by the opposite diagonal {u1, u2} of its two
// triangles, rewriting those triangles and leaving everything else unchanged.
// Rejected when u1 = u2 or when {u1, u2} is already an edge.
TriangularSkeleton flip(const TriangularSkeleton& t, const Edge& e);

// Left-fold of flip; the empty sequence returns t itself. Failures carry the
// index of the offending edge.
TriangularSkeleton flip_sequence(const TriangularSkeleton& t,
                                 const std::vector<Edge>& edges);

// Flip on a set of pairwise independent edges (each a diagonal of a 4-cycle
// avoiding the set); the result is permutation-invariant, so the set is
// flipped in canonical order after the independence pre-check.
TriangularSkeleton flip_all(const TriangularSkeleton& t, const std::set<Edge>& edges);

AugmentedGraph augmented_graph(const TriangularSkeleton& t, const SampledFlex& flex,
                               double tol = 1e-7);

struct FlipPropertyReport {
    bool realizes = false;        // (a) the initial realization realizes T'
    bool flex_preserved = false;  // (b) all samples induce equal lengths on T'
    bool const_angles = false;    // (c) surviving constant edges stay constant
    bool subgraph_of_aug = false; // (d) T' is a subgraph of the augmented graph
    std::vector<std::string> failures;

    bool all_pass() const { return failures.empty(); }
};

// Executable check that a flip sequence inside the constant-angle edge set
// preserves realization, flex, angle constancy, and stays inside G_aug.
FlipPropertyReport verify_flip_properties(const TriangularSkeleton& t,
                                          const TriangularSkeleton& t_prime,
                                          const SampledFlex& flex,
                                          const std::set<Edge>& e_const,
                                          double tol = 1e-7);

}  // namespace flexcycle
