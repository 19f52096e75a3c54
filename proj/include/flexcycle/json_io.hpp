#pragma once

#include <json.hpp>
#include <optional>
#include <string>

#include "flexcycle/cycles.hpp"
#include "flexcycle/flex.hpp"
#include "flexcycle/geometry.hpp"
#include "flexcycle/projective.hpp"
#include "flexcycle/skeleton.hpp"
#include "flexcycle/walks.hpp"

namespace flexcycle {

// Canonical serialization: keys sorted (nlohmann object order), numbers
// rendered with 17 significant digits so doubles round-trip bit-exactly and
// identical inputs give byte-identical output.
std::string canonical_dump(const nlohmann::json& j, int indent = 2);

nlohmann::json parse_json_text(const std::string& text, const std::string& origin);
nlohmann::json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

struct SkeletonDocument {
    Skeleton skeleton;
    std::optional<Realization> realization;
};

// {"vertices": [...], "faces": [[...], ...], "realization": {v: [x,y,z]}?}
SkeletonDocument skeleton_from_json(const nlohmann::json& j);
nlohmann::json skeleton_to_json(const Skeleton& s,
                                const std::optional<Realization>& rho = std::nullopt);

// OFF-style plain text (counts header, coordinate lines, face lines),
// converted losslessly to the JSON model with vertex names "0", "1", ...
SkeletonDocument skeleton_from_off(const std::string& text);

// {"t": [...], "samples": [{v: [x,y,z]}, ...]}
SampledFlex flex_from_json(const nlohmann::json& j);
nlohmann::json flex_to_json(const SampledFlex& flex);

struct ColoringDocument {
    VertexColoring coloring;
    std::optional<std::map<Vertex, ProjectivePoint>> rho_infinity;
};

// Either {"s": v, "rho_infinity": {v: [[re,im] x5]}} or
// {"s": v, "colors": {v: "red"|"blue"|"gold"}}.
ColoringDocument coloring_from_json(const nlohmann::json& j);

std::set<Edge> edge_set_from_json(const nlohmann::json& j);  // {"edges": [[u,v],...]}
nlohmann::json edge_set_to_json(const std::set<Edge>& edges);

CycleCertificate certificate_from_json(const nlohmann::json& j);
nlohmann::json certificate_to_json(const CycleCertificate& cert);

}  // namespace flexcycle
