#include "flexcycle/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace flexcycle {

std::vector<Edge> CycleCertificate::cycle_edges() const {
    std::vector<Edge> edges;
    edges.reserve(cycle.size());
    for (std::size_t i = 0; i < cycle.size(); ++i) {
        edges.emplace_back(cycle[i], cycle[(i + 1) % cycle.size()]);
    }
    return edges;
}

namespace {

// Depth-first over positions, +1 branch first: the first solution found is
// the lexicographically smallest. Prunes with suffix sums.
template <typename T>
bool signs_dfs(const std::vector<T>& lengths, const std::vector<T>& suffix,
               std::size_t i, T partial, T tol, std::vector<int>& signs) {
    if (i == lengths.size()) {
        return partial <= tol && partial >= -tol;
    }
    // |partial + remaining choice| can reach 0 only if |partial| <= suffix.
    const T mag = partial < T(0) ? -partial : partial;
    if (mag > suffix[i] + tol) return false;
    for (int s : {+1, -1}) {
        signs[i] = s;
        if (signs_dfs(lengths, suffix, i + 1, partial + T(s) * lengths[i], tol,
                      signs)) {
            return true;
        }
    }
    return false;
}

template <typename T>
std::optional<std::vector<int>> signs_exhaustive(const std::vector<T>& lengths,
                                                 T tol) {
    const std::size_t k = lengths.size();
    std::vector<T> suffix(k + 1, T(0));
    for (std::size_t i = k; i-- > 0;) suffix[i] = suffix[i + 1] + lengths[i];
    std::vector<int> signs(k, 1);
    // Global sign symmetry: fix the first sign to +1.
    if (signs_dfs(lengths, suffix, 1, lengths[0], tol, signs)) return signs;
    return std::nullopt;
}

void check_positive(const std::vector<double>& lengths) {
    if (lengths.size() < 2) {
        throw validation_error("sign assignment needs at least 2 lengths");
    }
    for (double l : lengths) {
        if (!(l > 0.0)) throw validation_error("nonpositive length in sign assignment");
    }
}

struct HalfSum {
    double sum;
    std::uint32_t mask;  // bit j set = sign -1 at local position j
};

// Lexicographic order on the sign vector encoded by a mask (+1 < -1): the
// mask read as a binary number, most significant = first position.
std::uint64_t lex_rank(std::uint32_t mask, std::size_t bits) {
    std::uint64_t rank = 0;
    for (std::size_t j = 0; j < bits; ++j) {
        rank = (rank << 1) | ((mask >> j) & 1u);
    }
    return rank;
}

}  // namespace

namespace detail {

std::optional<std::vector<int>> sign_assignment_exhaustive(
    const std::vector<double>& lengths, double tol) {
    check_positive(lengths);
    return signs_exhaustive<double>(lengths, tol);
}

std::optional<std::vector<int>> sign_assignment_mitm(
    const std::vector<double>& lengths, double tol) {
    check_positive(lengths);
    const std::size_t k = lengths.size();
    if (k > 48) {
        throw numerical_error("sign search on " + std::to_string(k) +
                              " lengths exceeds the supported size");
    }
    const std::size_t ka = (k + 1) / 2;
    const std::size_t kb = k - ka;

    // Right half: all signed sums, sorted for window lookups.
    std::vector<HalfSum> right;
    right.reserve(std::size_t(1) << kb);
    for (std::uint32_t mask = 0; mask < (1u << kb); ++mask) {
        double s = 0;
        for (std::size_t j = 0; j < kb; ++j) {
            s += ((mask >> j) & 1u) ? -lengths[ka + j] : lengths[ka + j];
        }
        right.push_back({s, mask});
    }
    std::sort(right.begin(), right.end(),
              [](const HalfSum& a, const HalfSum& b) { return a.sum < b.sum; });

    std::optional<std::pair<std::uint64_t, std::pair<std::uint32_t, std::uint32_t>>> best;
    // Left half fixes the first sign to +1 (global symmetry).
    for (std::uint32_t mask = 0; mask < (1u << (ka - 1)); ++mask) {
        double s = lengths[0];
        std::uint32_t full_mask = mask << 1;
        for (std::size_t j = 1; j < ka; ++j) {
            s += ((full_mask >> j) & 1u) ? -lengths[j] : lengths[j];
        }
        const auto lo = std::lower_bound(
            right.begin(), right.end(), -s - tol,
            [](const HalfSum& h, double v) { return h.sum < v; });
        for (auto it = lo; it != right.end() && it->sum <= -s + tol; ++it) {
            const std::uint64_t rank =
                (lex_rank(full_mask, ka) << kb) | lex_rank(it->mask, kb);
            if (!best || rank < best->first) {
                best = {rank, {full_mask, it->mask}};
            }
        }
    }
    if (!best) return std::nullopt;
    std::vector<int> signs(k, 1);
    for (std::size_t j = 0; j < ka; ++j) {
        if ((best->second.first >> j) & 1u) signs[j] = -1;
    }
    for (std::size_t j = 0; j < kb; ++j) {
        if ((best->second.second >> j) & 1u) signs[ka + j] = -1;
    }
    return signs;
}

}  // namespace detail

std::optional<std::vector<int>> sign_assignment(const std::vector<double>& lengths,
                                                double tol) {
    if (lengths.size() <= detail::exhaustive_limit) {
        return detail::sign_assignment_exhaustive(lengths, tol);
    }
    return detail::sign_assignment_mitm(lengths, tol);
}

std::optional<std::vector<int>> sign_assignment_exact(
    const std::vector<std::int64_t>& lengths) {
    if (lengths.size() < 2) {
        throw validation_error("sign assignment needs at least 2 lengths");
    }
    for (std::int64_t l : lengths) {
        if (l <= 0) throw validation_error("nonpositive length in sign assignment");
    }
    return signs_exhaustive<std::int64_t>(lengths, 0);
}

namespace {

struct CycleSearch {
    const Graph& g;
    const EdgePredicate& allowed;
    const CycleVisitor& visit;
    std::map<Vertex, std::vector<Vertex>> adjacency;
    Vertex start;  // smaller endpoint of `through`; cycles close here
    std::size_t target_len = 0;
    std::vector<Vertex> path;
    std::set<Vertex> on_path;
    bool stopped = false;

    CycleSearch(const Graph& graph, const EdgePredicate& pred,
                const CycleVisitor& v, Vertex a)
        : g(graph), allowed(pred), visit(v), start(std::move(a)) {
        for (const Vertex& vtx : g.vertices) adjacency[vtx] = g.neighbors(vtx);
    }

    // Extends the path to exactly target_len vertices and closes it to start.
    void dfs(const Vertex& current) {
        if (stopped) return;
        if (path.size() == target_len) {
            Edge closing(current, start);
            if (g.has_edge(closing) && allowed(closing)) {
                if (!visit(path)) stopped = true;
            }
            return;
        }
        for (const Vertex& next : adjacency[current]) {
            if (stopped) return;
            if (on_path.count(next)) continue;
            Edge e(current, next);
            if (!allowed(e)) continue;
            // Avoid closing early through the start vertex.
            if (next == start) continue;
            path.push_back(next);
            on_path.insert(next);
            dfs(next);
            on_path.erase(next);
            path.pop_back();
        }
    }
};

}  // namespace

void enumerate_cycles(const Graph& g, const Edge& through,
                      const EdgePredicate& allowed, std::size_t max_len,
                      const CycleVisitor& visit) {
    if (!g.has_edge(through)) {
        throw validation_error("edge " + through.str() + " is not in the graph");
    }
    if (!allowed(through)) {
        throw validation_error("edge " + through.str() + " is excluded by the predicate");
    }
    max_len = std::min(max_len, g.vertices.size());

    CycleSearch search{g, allowed, visit, through.a};
    // Iterative deepening keeps the (length, lexicographic) output order:
    // neighbors are visited in sorted order at a fixed target length.
    for (std::size_t len = 3; len <= max_len && !search.stopped; ++len) {
        search.target_len = len;
        search.path = {through.a, through.b};
        search.on_path = {through.a, through.b};
        search.dfs(through.b);
    }
}

std::vector<std::vector<Vertex>> enumerate_cycles(const Graph& g,
                                                  const Edge& through,
                                                  const EdgePredicate& allowed,
                                                  std::size_t max_len) {
    std::vector<std::vector<Vertex>> cycles;
    enumerate_cycles(g, through, allowed, max_len,
                     [&](const std::vector<Vertex>& c) {
                         cycles.push_back(c);
                         return true;
                     });
    return cycles;
}

namespace {

bool cycle_is_induced(const Graph& g, const std::vector<Vertex>& cycle) {
    const std::size_t k = cycle.size();
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 2; j < k; ++j) {
            if (i == 0 && j == k - 1) continue;  // closing edge
            if (g.has_edge(Edge(cycle[i], cycle[j]))) return false;
        }
    }
    return true;
}

}  // namespace

std::optional<CycleCertificate> find_zero_sum_cycle(const Graph& g,
                                                    const EdgeLengthMap& lambda,
                                                    const Edge& e,
                                                    const std::set<Edge>& forbidden,
                                                    const ZeroSumOptions& opts) {
    if (forbidden.count(e)) {
        throw validation_error("queried edge " + e.str() + " is itself forbidden");
    }
    const std::size_t max_len =
        opts.max_len == 0 ? g.vertices.size() : opts.max_len;
    const EdgePredicate allowed = [&](const Edge& c) {
        return forbidden.count(c) == 0;
    };

    std::optional<CycleCertificate> result;
    enumerate_cycles(g, e, allowed, max_len, [&](const std::vector<Vertex>& cycle) {
        if (opts.mode.avoid_s || opts.mode.avoid_n) {
            for (const Vertex& v : cycle) {
                if ((opts.mode.avoid_s && v == *opts.mode.avoid_s) ||
                    (opts.mode.avoid_n && v == *opts.mode.avoid_n)) {
                    return true;  // keep searching
                }
            }
        }
        if (opts.mode.induced && !cycle_is_induced(g, cycle)) return true;

        std::vector<double> lengths;
        lengths.reserve(cycle.size());
        double max_lambda = 0.0;
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            const Edge ce(cycle[i], cycle[(i + 1) % cycle.size()]);
            auto it = lambda.find(ce);
            if (it == lambda.end()) {
                throw validation_error("no length for edge " + ce.str());
            }
            lengths.push_back(it->second);
            max_lambda = std::max(max_lambda, it->second);
        }

        std::optional<std::vector<int>> signs;
        if (opts.exact) {
            std::vector<std::int64_t> ints;
            ints.reserve(lengths.size());
            for (double l : lengths) {
                const double r = std::round(l);
                if (std::abs(l - r) > 1e-9) {
                    throw validation_error(
                        "exact mode requires integer-valued lengths");
                }
                ints.push_back(static_cast<std::int64_t>(r));
            }
            signs = sign_assignment_exact(ints);
        } else {
            const double tol = opts.tol >= 0.0 ? opts.tol : 1e-8 * max_lambda;
            signs = sign_assignment(lengths, tol);
        }
        if (!signs) return true;

        double sum = 0.0;
        for (std::size_t i = 0; i < lengths.size(); ++i) sum += (*signs)[i] * lengths[i];
        result = CycleCertificate{cycle, *signs, std::abs(sum), forbidden};
        return false;  // shortest certificate found; stop
    });
    return result;
}

bool verify_certificate(const CycleCertificate& cert, const EdgeLengthMap& lambda,
                        const std::set<Edge>& forbidden, double tol) {
    const std::size_t k = cert.cycle.size();
    if (k < 3 || cert.signs.size() != k) return false;

    std::set<Vertex> distinct(cert.cycle.begin(), cert.cycle.end());
    if (distinct.size() != k) return false;

    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        if (cert.signs[i] != 1 && cert.signs[i] != -1) return false;
        const Edge e(cert.cycle[i], cert.cycle[(i + 1) % k]);
        if (forbidden.count(e)) return false;
        auto it = lambda.find(e);
        if (it == lambda.end()) return false;  // not an edge with a length
        sum += cert.signs[i] * it->second;
    }
    return std::abs(sum) <= tol;
}

}  // namespace flexcycle
