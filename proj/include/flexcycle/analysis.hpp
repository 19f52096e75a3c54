#pragma once

#include <array>
#include <json.hpp>
#include <optional>

#include "flexcycle/cycles.hpp"
#include "flexcycle/flex.hpp"
#include "flexcycle/json_io.hpp"
#include "flexcycle/skeleton.hpp"

namespace flexcycle {

inline constexpr const char* kVersion = "0.1.0";

struct AnalyzeOptions {
    double step = 1e-2;
    std::size_t max_samples = 100;
    double corrector_tol = 1e-9;
    double rank_tol = 1e-8;
    double classify_tol = 1e-7;
    double nondegenerate_tol = 1e-9;
    std::size_t max_len = 0;  // 0 = number of vertices
    double zero_sum_tol = -1.0;  // < 0 = 1e-8 * max length on the cycle
    bool exact = false;
    bool induced = false;  // chordless cycles avoiding the edge's s and n
    std::optional<std::array<Vertex, 3>> pin;  // w1, w2, n
    std::optional<SampledFlex> supplied_flex;
    std::size_t threads = 0;  // 0 = FLEXCYCLE_THREADS env or hardware
};

// Lexicographically first non-degenerate triangle of t under rho.
PinnedFrame default_pin(const TriangularSkeleton& t, const Realization& rho);

// Full pipeline: validate, triangulate if needed, check non-degeneracy,
// obtain the flex (trace or supplied), classify edges, and search a zero-sum
// cycle certificate for every moving edge of the input.
nlohmann::json analyze(const SkeletonDocument& doc, const AnalyzeOptions& opts = {});

// The tracing half of the pipeline; throws rigid_error when the input admits
// no flex.
SampledFlex run_flex(const SkeletonDocument& doc, const AnalyzeOptions& opts = {});

std::size_t resolve_threads(std::size_t requested, std::size_t jobs);

}  // namespace flexcycle
