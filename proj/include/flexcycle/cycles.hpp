#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "flexcycle/geometry.hpp"
#include "flexcycle/skeleton.hpp"

namespace flexcycle {

// Machine-checkable witness of the zero-sum condition: a simple cycle through
// the queried edge, signs summing the edge lengths to (near) zero, and the
// forbidden edges it avoids.
struct CycleCertificate {
    std::vector<Vertex> cycle;  // v1 ... vk; closes back to v1
    std::vector<int> signs;     // one per cycle edge {v_j, v_{j+1}}
    double residual;
    std::set<Edge> avoided;

    std::vector<Edge> cycle_edges() const;
};

// Signs eta in {-1,+1}^k with |sum eta_j lambda_j| <= tol, or nullopt.
// Deterministic representative: lexicographically smallest (with +1 < -1)
// among solutions with eta_1 = +1. Exhaustive search for k <= 24, sorted
// half-sum meet-in-the-middle above.
std::optional<std::vector<int>> sign_assignment(const std::vector<double>& lengths,
                                                double tol);

// Exact variant over integers: |sum| = 0 exactly.
std::optional<std::vector<int>> sign_assignment_exact(
    const std::vector<std::int64_t>& lengths);

namespace detail {
// Both strategies exposed for cross-checking; `exhaustive_limit` is the k
// above which the public entry point switches to meet-in-the-middle.
inline constexpr std::size_t exhaustive_limit = 24;
std::optional<std::vector<int>> sign_assignment_exhaustive(
    const std::vector<double>& lengths, double tol);
std::optional<std::vector<int>> sign_assignment_mitm(
    const std::vector<double>& lengths, double tol);
}  // namespace detail

using EdgePredicate = std::function<bool(const Edge&)>;

// Visitor receives each cycle as a vertex sequence starting with the two
// endpoints of `through` (smaller first); return false to stop enumeration.
using CycleVisitor = std::function<bool(const std::vector<Vertex>&)>;

// Every simple cycle through `through` whose edges all satisfy `allowed` and
// whose length is at most max_len, each exactly once, in nondecreasing length
// order and lexicographic order within a length.
void enumerate_cycles(const Graph& g, const Edge& through,
                      const EdgePredicate& allowed, std::size_t max_len,
                      const CycleVisitor& visit);

std::vector<std::vector<Vertex>> enumerate_cycles(const Graph& g,
                                                  const Edge& through,
                                                  const EdgePredicate& allowed,
                                                  std::size_t max_len);

struct SearchMode {
    bool induced = false;            // cycle must be chordless in g
    std::optional<Vertex> avoid_s;   // vertices excluded from the cycle
    std::optional<Vertex> avoid_n;

    static SearchMode general() { return {}; }
    static SearchMode induced_avoiding(Vertex s, Vertex n) {
        return SearchMode{true, std::move(s), std::move(n)};
    }
};

struct ZeroSumOptions {
    std::size_t max_len = 0;   // 0 means |V|
    double tol = -1.0;         // < 0 means 1e-8 * max lambda on the cycle
    bool exact = false;        // integer lengths, tol = 0
    SearchMode mode = SearchMode::general();
};

// First (shortest, then lexicographic) cycle through e avoiding `forbidden`
// that admits a zero-sum sign assignment. Existence of a certificate is a
// NECESSARY condition for the dihedral angle at e to change along a flex;
// absence up to max_len proves constancy relative to max_len, presence
// proves nothing.
std::optional<CycleCertificate> find_zero_sum_cycle(const Graph& g,
                                                    const EdgeLengthMap& lambda,
                                                    const Edge& e,
                                                    const std::set<Edge>& forbidden,
                                                    const ZeroSumOptions& opts = {});

// Independent re-check of a certificate: simplicity, edge existence, forbidden
// avoidance, and the signed sum; shares no code with the search.
bool verify_certificate(const CycleCertificate& cert, const EdgeLengthMap& lambda,
                        const std::set<Edge>& forbidden, double tol);

}  // namespace flexcycle
