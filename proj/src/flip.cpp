#include "flexcycle/flip.hpp"

#include <algorithm>
#include <cmath>

namespace flexcycle {

TriangularSkeleton flip(const TriangularSkeleton& t, const Edge& e) {
    auto [u1, u2] = t.two_opposites(e);  // rejects missing/ambiguous edges
    const Edge diagonal(u1, u2);
    if (t.has_edge(diagonal)) {
        throw validation_error("flip on " + e.str() + " would create a doubled edge " +
                               diagonal.str());
    }

    std::vector<Face> faces;
    faces.reserve(t.faces().size());
    const auto incident = t.skeleton().faces_at(e);
    for (std::size_t fi = 0; fi < t.faces().size(); ++fi) {
        if (std::find(incident.begin(), incident.end(), fi) == incident.end()) {
            faces.push_back(t.faces()[fi]);
        }
    }
    faces.push_back({u1, u2, e.a});
    faces.push_back({u1, u2, e.b});
    return TriangularSkeleton(Skeleton(t.vertices(), std::move(faces)));
}

TriangularSkeleton flip_sequence(const TriangularSkeleton& t,
                                 const std::vector<Edge>& edges) {
    TriangularSkeleton current = t;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        try {
            current = flip(current, edges[i]);
        } catch (const Error& err) {
            throw validation_error("flip sequence failed at index " +
                                   std::to_string(i) + ": " + err.what());
        }
    }
    return current;
}

TriangularSkeleton flip_all(const TriangularSkeleton& t, const std::set<Edge>& edges) {
    // Independence: each edge is the diagonal of a 4-cycle whose sides avoid
    // the set; then any permutation yields the same flip.
    for (const Edge& e : edges) {
        auto [u1, u2] = t.two_opposites(e);
        for (const Edge& side : {Edge(e.a, u1), Edge(u1, e.b), Edge(e.b, u2), Edge(u2, e.a)}) {
            if (edges.count(side)) {
                throw validation_error("edges " + e.str() + " and " + side.str() +
                                       " are not independent: shared 4-cycle");
            }
        }
    }
    return flip_sequence(t, std::vector<Edge>(edges.begin(), edges.end()));
}

AugmentedGraph augmented_graph(const TriangularSkeleton& t, const SampledFlex& flex,
                               double tol) {
    AugmentedGraph aug;
    aug.vertices = t.vertices();
    aug.edges = constant_distance_pairs(t.vertices(), flex, tol);
    aug.edges.insert(t.edges().begin(), t.edges().end());
    return aug;
}

namespace {

double relative_variation(const std::vector<double>& values) {
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    if (*mx == 0.0) return 0.0;
    return (*mx - *mn) / *mx;
}

}  // namespace

FlipPropertyReport verify_flip_properties(const TriangularSkeleton& t,
                                          const TriangularSkeleton& t_prime,
                                          const SampledFlex& flex,
                                          const std::set<Edge>& e_const,
                                          double tol) {
    FlipPropertyReport report;
    const Realization& rho0 = flex.initial();

    // (a) rho0 realizes T': adjacent vertices stay distinct.
    report.realizes = true;
    for (const Edge& e : t_prime.edges()) {
        if ((position(rho0, e.a) - position(rho0, e.b)).norm() == 0.0) {
            report.realizes = false;
            report.failures.push_back("(a) edge " + e.str() +
                                      " has coincident endpoints initially");
        }
    }

    // (b) the flex is a flex of T': every T' edge keeps its length.
    report.flex_preserved = true;
    for (const Edge& e : t_prime.edges()) {
        std::vector<double> lens;
        lens.reserve(flex.size());
        for (const Realization& rho : flex.samples) {
            lens.push_back((position(rho, e.a) - position(rho, e.b)).norm());
        }
        if (relative_variation(lens) >= tol) {
            report.flex_preserved = false;
            report.failures.push_back("(b) edge " + e.str() +
                                      " changes length along the flex");
        }
    }

    // (c) constant-angle edges surviving in T' keep a constant dihedral,
    // measured by the opposite-vertex distance across their T' triangles.
    report.const_angles = true;
    for (const Edge& e : e_const) {
        if (!t_prime.has_edge(e)) continue;
        auto opp = t_prime.opposite_vertices(e);
        std::sort(opp.begin(), opp.end(), vertex_less);
        opp.erase(std::unique(opp.begin(), opp.end()), opp.end());
        if (opp.size() != 2) continue;  // boundary-style; nothing to check
        std::vector<double> dist;
        dist.reserve(flex.size());
        for (const Realization& rho : flex.samples) {
            dist.push_back((position(rho, opp[0]) - position(rho, opp[1])).norm());
        }
        if (relative_variation(dist) >= tol) {
            report.const_angles = false;
            report.failures.push_back("(c) dihedral at " + e.str() +
                                      " is no longer constant in T'");
        }
    }

    // (d) T' is a subgraph of the augmented graph.
    const AugmentedGraph aug = augmented_graph(t, flex, tol);
    report.subgraph_of_aug = true;
    for (const Edge& e : t_prime.edges()) {
        if (!aug.has_edge(e)) {
            report.subgraph_of_aug = false;
            report.failures.push_back("(d) edge " + e.str() +
                                      " is not in the augmented graph");
        }
    }
    return report;
}

}  // namespace flexcycle
