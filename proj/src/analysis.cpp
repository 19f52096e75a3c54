#include "flexcycle/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <json.hpp>
#include <sstream>
#include <thread>

namespace flexcycle {

using nlohmann::json;

namespace {

void require_valid(const Skeleton& h) {
    const ValidationReport report = validate_skeleton(h);
    if (!report.ok()) {
        std::ostringstream os;
        os << "invalid 2-skeleton:";
        for (const Violation& v : report.violations) os << "\n  " << v.message;
        throw validation_error(os.str());
    }
}

// Tracing also works on open triangular complexes (a hinge, a strip); only
// structural defects are fatal there, not the closed-surface face count.
void require_flexable(const Skeleton& h) {
    const ValidationReport report = validate_skeleton(h);
    std::ostringstream os;
    bool fatal = false;
    os << "invalid skeleton:";
    for (const Violation& v : report.violations) {
        if (v.code == "edge_face_count") continue;
        fatal = true;
        os << "\n  " << v.message;
    }
    if (fatal) throw validation_error(os.str());
}

FanTriangulation triangulated(const Skeleton& h) {
    if (h.is_triangular()) {
        return FanTriangulation{TriangularSkeleton(h), {}};
    }
    return triangulate_fan(h);
}

const Realization& require_realization(const SkeletonDocument& doc) {
    if (!doc.realization) {
        throw validation_error("input document has no realization");
    }
    for (const Vertex& v : doc.skeleton.vertices()) {
        if (!doc.realization->count(v)) {
            throw validation_error("realization misses vertex " + v);
        }
    }
    return *doc.realization;
}

void require_nondegenerate(const TriangularSkeleton& t, const Realization& rho,
                           double tol) {
    const NondegeneracyReport report = check_nondegenerate(t, rho, tol);
    if (!report.ok()) {
        std::ostringstream os;
        os << "degenerate triangles:";
        for (const DegenerateFace& f : report.degenerate) {
            os << " (" << f.face[0] << "," << f.face[1] << "," << f.face[2] << ")";
        }
        throw validation_error(os.str());
    }
}

PinnedFrame resolve_pin(const TriangularSkeleton& t, const Realization& rho,
                        const AnalyzeOptions& opts) {
    if (opts.pin) {
        return PinnedFrame::from_realization(rho, (*opts.pin)[0], (*opts.pin)[1],
                                             (*opts.pin)[2]);
    }
    return default_pin(t, rho);
}

json tolerances_json(const AnalyzeOptions& opts) {
    json out;
    out["corrector_tol"] = opts.corrector_tol;
    out["rank_tol"] = opts.rank_tol;
    out["classify_tol"] = opts.classify_tol;
    out["nondegenerate_tol"] = opts.nondegenerate_tol;
    out["zero_sum_tol"] =
        opts.zero_sum_tol < 0 ? json("1e-8 * max cycle length") : json(opts.zero_sum_tol);
    return out;
}

json edge_json(const Edge& e) { return json::array({e.a, e.b}); }

double flex_max_residual(const Skeleton& g, const SampledFlex& flex) {
    const EdgeLengthMap lambda = edge_length_map(g, flex.initial());
    double worst = 0.0;
    for (const Realization& rho : flex.samples) {
        for (const auto& [e, len] : lambda) {
            const double d = (position(rho, e.a) - position(rho, e.b)).norm();
            worst = std::max(worst, std::abs(d - len));
        }
    }
    return worst;
}

}  // namespace

PinnedFrame default_pin(const TriangularSkeleton& t, const Realization& rho) {
    for (const Face& f : canonical_face_list(t.skeleton())) {
        const Vec3& a = position(rho, f[0]);
        const Vec3& b = position(rho, f[1]);
        const Vec3& c = position(rho, f[2]);
        const double lmax = std::max({(b - a).norm(), (c - a).norm(), (c - b).norm()});
        if (triangle_area(a, b, c) > 1e-12 * lmax * lmax) {
            return PinnedFrame::from_realization(rho, f[0], f[1], f[2]);
        }
    }
    throw validation_error("no non-degenerate triangle available for pinning");
}

std::size_t resolve_threads(std::size_t requested, std::size_t jobs) {
    std::size_t n = requested;
    if (n == 0) {
        if (const char* env = std::getenv("FLEXCYCLE_THREADS")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v > 0) n = static_cast<std::size_t>(v);
        }
    }
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return std::max<std::size_t>(1, std::min(n, std::max<std::size_t>(jobs, 1)));
}

SampledFlex run_flex(const SkeletonDocument& doc, const AnalyzeOptions& opts) {
    require_flexable(doc.skeleton);
    const Realization& rho = require_realization(doc);

    FanTriangulation tri = triangulated(doc.skeleton);
    require_nondegenerate(tri.skeleton, rho, opts.nondegenerate_tol);

    const PinnedFrame pin = resolve_pin(tri.skeleton, rho, opts);
    TraceOptions trace;
    trace.step = opts.step;
    trace.max_samples = opts.max_samples;
    trace.corrector_tol = opts.corrector_tol;
    trace.rank_tol = opts.rank_tol;
    // The original skeleton carries the constraints: edges plus within-face
    // pairs, so non-triangular faces stay congruent along the trace.
    return trace_flex(doc.skeleton, rho, pin, trace);
}

json analyze(const SkeletonDocument& doc, const AnalyzeOptions& opts) {
    require_valid(doc.skeleton);
    const Realization& rho = require_realization(doc);
    const Skeleton& h = doc.skeleton;
    const bool triangular_input = h.is_triangular();

    FanTriangulation tri = triangulated(h);
    const TriangularSkeleton& t = tri.skeleton;
    require_nondegenerate(t, rho, opts.nondegenerate_tol);

    json report;
    report["version"] = kVersion;
    report["tolerances"] = tolerances_json(opts);
    report["input"] = {{"vertices", h.vertices().size()},
                       {"edges", h.edges().size()},
                       {"faces", h.faces().size()},
                       {"triangular", triangular_input}};
    report["triangulation"] = {{"applied", !triangular_input},
                               {"diagonals", edge_set_to_json(tri.diagonals)}};

    // Flex: supplied file, or traced on the constraint system of the input
    // (which keeps non-triangular faces congruent).
    SampledFlex flex;
    std::string flex_status;
    if (opts.supplied_flex) {
        flex = *opts.supplied_flex;
        FlexValidationOptions fv;
        fv.length_tol = std::max(opts.corrector_tol, 1e-7);
        const ValidationReport rv = validate_flex(h, flex, fv);
        if (!rv.ok()) {
            std::ostringstream os;
            os << "supplied flex fails validation:";
            for (const Violation& v : rv.violations) os << "\n  " << v.message;
            throw validation_error(os.str());
        }
        // The flex must start at the document's realization.
        for (const Vertex& v : h.vertices()) {
            if ((position(flex.initial(), v) - position(rho, v)).norm() > 1e-7) {
                throw validation_error(
                    "supplied flex does not start at the input realization "
                    "(vertex " + v + " differs)");
            }
        }
        flex_status = "supplied";
    } else {
        const PinnedFrame pin = resolve_pin(t, rho, opts);
        const int dim = flex_dimension(h, rho, pin, opts.rank_tol);
        if (dim == 0) {
            report["flex"] = {{"status", "rigid"}, {"dimension", 0}};
            report["edges"] = json::array();
            report["certificates"] = json::array();
            report["conclusion"] =
                "The pinned realization admits no infinitesimal flex; "
                "no edge classification or cycle search applies.";
            return report;
        }
        TraceOptions trace;
        trace.step = opts.step;
        trace.max_samples = opts.max_samples;
        trace.corrector_tol = opts.corrector_tol;
        trace.rank_tol = opts.rank_tol;
        flex = trace_flex(h, rho, pin, trace);
        flex_status = "traced";
    }
    report["flex"] = {{"status", flex_status},
                      {"samples", flex.size()},
                      {"max_residual", flex_max_residual(h, flex)}};

    // Classification of the input's edges. Triangular inputs use the
    // opposite-vertex distances; general 2-skeletons use face-pair profiles.
    EdgeClassification cls = triangular_input ? classify_edges(t, flex, opts.classify_tol)
                                              : classify_edges_profile(h, flex, opts.classify_tol);

    // Diagonals belong to rigidified faces; assert (not assume) they are
    // constant in the triangulation before forbidding them.
    if (!triangular_input) {
        const EdgeClassification tri_cls = classify_edges(t, flex, opts.classify_tol);
        for (const Edge& d : tri.diagonals) {
            if (!tri_cls.e_const.count(d)) {
                throw numerical_error("diagonal " + d.str() +
                                      " is not constant along the flex; face "
                                      "rigidity violated");
            }
        }
    }

    json edge_table = json::array();
    for (const Edge& e : h.edges()) {
        edge_table.push_back({{"edge", edge_json(e)},
                              {"class", cls.e_const.count(e) ? "const" : "moving"},
                              {"variation", cls.variation.at(e)}});
    }
    report["edges"] = std::move(edge_table);

    std::set<Edge> forbidden = tri.diagonals;
    forbidden.insert(cls.e_const.begin(), cls.e_const.end());

    const std::vector<Edge> moving(cls.e_moving.begin(), cls.e_moving.end());
    const EdgeLengthMap lambda = edge_length_map(t.skeleton(), rho);
    const std::size_t max_len =
        opts.max_len == 0 ? t.vertices().size() : opts.max_len;

    std::vector<json> results(moving.size());
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= moving.size()) return;
            try {
                const Edge& e = moving[i];
                ZeroSumOptions zopts;
                zopts.max_len = max_len;
                zopts.tol = opts.zero_sum_tol;
                zopts.exact = opts.exact;
                if (opts.induced) {
                    auto [s, n] = t.two_opposites(e);
                    zopts.mode = SearchMode::induced_avoiding(s, n);
                }
                auto cert = find_zero_sum_cycle(t.skeleton(), lambda, e, forbidden, zopts);
                json entry;
                entry["edge"] = edge_json(e);
                if (cert) {
                    const double vtol = [&] {
                        if (opts.zero_sum_tol >= 0) return opts.zero_sum_tol;
                        double max_lambda = 0;
                        for (const Edge& ce : cert->cycle_edges()) {
                            max_lambda = std::max(max_lambda, lambda.at(ce));
                        }
                        return 1e-8 * max_lambda;
                    }();
                    if (!verify_certificate(*cert, lambda, forbidden, vtol)) {
                        throw numerical_error("certificate for " + e.str() +
                                              " failed independent verification");
                    }
                    entry["found"] = true;
                    entry["certificate"] = certificate_to_json(*cert);
                } else {
                    entry["found"] = false;
                    entry["note"] =
                        "no zero-sum cycle through this edge up to max_len " +
                        std::to_string(max_len);
                }
                results[i] = std::move(entry);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    const std::size_t nthreads = resolve_threads(opts.threads, moving.size());
    if (nthreads <= 1 || moving.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    report["certificates"] = json(results);
    report["conclusion"] =
        "A zero-sum cycle is a NECESSARY condition for the edge to move: each "
        "certificate shows the condition holds at that edge but proves nothing "
        "further; where none was found up to max_len, the edge's dihedral angle "
        "is constant in any flex with non-degenerate triangles, relative to "
        "that search bound.";
    return report;
}

}  // namespace flexcycle
