#include "flexcycle/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace flexcycle {

using nlohmann::json;

namespace {

void dump_number(std::ostringstream& os, double value) {
    if (!std::isfinite(value)) {
        throw numerical_error("cannot serialize a non-finite number");
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    os << buf;
}

void dump_value(std::ostringstream& os, const json& j, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ",\n";
                first = false;
                os << pad << json(it.key()).dump() << ": ";
                dump_value(os, it.value(), indent, depth + 1);
            }
            os << "\n" << close_pad << "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << "[\n";
            bool first = true;
            for (const auto& item : j) {
                if (!first) os << ",\n";
                first = false;
                os << pad;
                dump_value(os, item, indent, depth + 1);
            }
            os << "\n" << close_pad << "]";
            return;
        }
        case json::value_t::number_float:
            dump_number(os, j.get<double>());
            return;
        default:
            os << j.dump();
            return;
    }
}

Vertex vertex_from_json(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    if (j.is_number_unsigned()) return std::to_string(j.get<unsigned long long>());
    throw validation_error("vertex identifiers must be strings or integers, got: " +
                           j.dump());
}

Vec3 vec3_from_json(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 3) {
        throw validation_error(what + " must be an array of 3 numbers");
    }
    return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

json vec3_to_json(const Vec3& v) {
    return json::array({v.x(), v.y(), v.z()});
}

Realization realization_from_json(const json& j) {
    if (!j.is_object()) {
        throw validation_error("realization must map vertices to [x,y,z]");
    }
    Realization rho;
    for (auto it = j.begin(); it != j.end(); ++it) {
        rho[it.key()] = vec3_from_json(it.value(), "coordinates of " + it.key());
    }
    return rho;
}

json realization_to_json(const Realization& rho) {
    json out = json::object();
    for (const auto& [v, p] : rho) out[v] = vec3_to_json(p);
    return out;
}

}  // namespace

std::string canonical_dump(const json& j, int indent) {
    std::ostringstream os;
    dump_value(os, j, indent, 0);
    os << "\n";
    return os.str();
}

json parse_json_text(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw validation_error("parse error in " + origin + ": " + e.what());
    }
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_json_text(buffer.str(), path);
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw validation_error("cannot write file: " + path);
    out << text;
}

SkeletonDocument skeleton_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("faces")) {
        throw validation_error("skeleton document needs \"vertices\" and \"faces\"");
    }
    std::vector<Vertex> vertices;
    for (const auto& v : j.at("vertices")) vertices.push_back(vertex_from_json(v));
    std::vector<Face> faces;
    for (const auto& fj : j.at("faces")) {
        if (!fj.is_array()) throw validation_error("each face must be an array");
        Face f;
        for (const auto& v : fj) f.push_back(vertex_from_json(v));
        faces.push_back(std::move(f));
    }
    SkeletonDocument doc{Skeleton(std::move(vertices), std::move(faces)), std::nullopt};
    if (j.contains("realization")) {
        doc.realization = realization_from_json(j.at("realization"));
    }
    return doc;
}

json skeleton_to_json(const Skeleton& s, const std::optional<Realization>& rho) {
    json out;
    out["vertices"] = s.vertices();
    json faces = json::array();
    for (const Face& f : canonical_face_list(s)) faces.push_back(f);
    out["faces"] = std::move(faces);
    if (rho) out["realization"] = realization_to_json(*rho);
    return out;
}

SkeletonDocument skeleton_from_off(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
    }
    std::size_t pos = 0;
    auto next = [&]() -> const std::string& {
        if (pos >= tokens.size()) throw validation_error("OFF input ends unexpectedly");
        return tokens[pos++];
    };
    if (!tokens.empty() && tokens[0] == "OFF") ++pos;

    const long nv = std::stol(next());
    const long nf = std::stol(next());
    next();  // edge count, ignored

    std::vector<Vertex> vertices;
    Realization rho;
    for (long i = 0; i < nv; ++i) {
        const double x = std::stod(next());
        const double y = std::stod(next());
        const double z = std::stod(next());
        Vertex name = std::to_string(i);
        vertices.push_back(name);
        rho[name] = Vec3(x, y, z);
    }
    std::vector<Face> faces;
    for (long i = 0; i < nf; ++i) {
        const long k = std::stol(next());
        Face f;
        for (long c = 0; c < k; ++c) {
            const long idx = std::stol(next());
            if (idx < 0 || idx >= nv) {
                throw validation_error("OFF face references vertex " +
                                       std::to_string(idx) + " out of range");
            }
            f.push_back(std::to_string(idx));
        }
        faces.push_back(std::move(f));
    }
    return SkeletonDocument{Skeleton(std::move(vertices), std::move(faces)), rho};
}

SampledFlex flex_from_json(const json& j) {
    if (!j.is_object() || !j.contains("t") || !j.contains("samples")) {
        throw validation_error("flex document needs \"t\" and \"samples\"");
    }
    SampledFlex flex;
    for (const auto& t : j.at("t")) flex.t.push_back(t.get<double>());
    for (const auto& s : j.at("samples")) {
        flex.samples.push_back(realization_from_json(s));
    }
    if (flex.t.size() != flex.samples.size()) {
        throw validation_error("flex document: t and samples lengths differ");
    }
    return flex;
}

json flex_to_json(const SampledFlex& flex) {
    json out;
    out["t"] = flex.t;
    json samples = json::array();
    for (const Realization& rho : flex.samples) {
        samples.push_back(realization_to_json(rho));
    }
    out["samples"] = std::move(samples);
    return out;
}

ColoringDocument coloring_from_json(const json& j) {
    if (!j.is_object() || !j.contains("s")) {
        throw validation_error("coloring document needs \"s\"");
    }
    const Vertex s = vertex_from_json(j.at("s"));
    ColoringDocument doc;
    if (j.contains("rho_infinity")) {
        std::map<Vertex, ProjectivePoint> rho_inf;
        for (auto it = j.at("rho_infinity").begin(); it != j.at("rho_infinity").end(); ++it) {
            const json& coords = it.value();
            if (!coords.is_array() || coords.size() != 5) {
                throw validation_error("rho_infinity point for " + it.key() +
                                       " must have 5 [re,im] entries");
            }
            ProjectivePoint p;
            for (std::size_t i = 0; i < 5; ++i) {
                const json& c = coords[i];
                if (!c.is_array() || c.size() != 2) {
                    throw validation_error("rho_infinity coordinates must be [re,im] pairs");
                }
                p.coords[i] = Complex(c[0].get<double>(), c[1].get<double>());
            }
            rho_inf.emplace(it.key(), p);
        }
        doc.coloring = color_vertices(rho_inf, s);
        doc.rho_infinity = std::move(rho_inf);
    } else if (j.contains("colors")) {
        doc.coloring.s = s;
        for (auto it = j.at("colors").begin(); it != j.at("colors").end(); ++it) {
            const std::string name = it.value().get<std::string>();
            Color c;
            if (name == "red") c = Color::Red;
            else if (name == "blue") c = Color::Blue;
            else if (name == "gold") c = Color::Gold;
            else throw validation_error("unknown color \"" + name + "\" for " + it.key());
            doc.coloring.colors[it.key()] = c;
        }
        if (doc.coloring.at(s) != Color::Blue) {
            throw validation_error("vertex s = " + s + " must be colored blue");
        }
    } else {
        throw validation_error("coloring document needs \"rho_infinity\" or \"colors\"");
    }
    return doc;
}

std::set<Edge> edge_set_from_json(const json& j) {
    const json& arr = j.is_object() && j.contains("edges") ? j.at("edges") : j;
    if (!arr.is_array()) {
        throw validation_error("edge set must be an array of [u,v] pairs");
    }
    std::set<Edge> edges;
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 2) {
            throw validation_error("each edge must be a [u,v] pair");
        }
        edges.insert(Edge(vertex_from_json(e[0]), vertex_from_json(e[1])));
    }
    return edges;
}

json edge_set_to_json(const std::set<Edge>& edges) {
    json arr = json::array();
    for (const Edge& e : edges) arr.push_back(json::array({e.a, e.b}));
    return arr;
}

CycleCertificate certificate_from_json(const json& j) {
    if (!j.is_object() || !j.contains("cycle") || !j.contains("signs")) {
        throw validation_error("certificate needs \"cycle\" and \"signs\"");
    }
    CycleCertificate cert;
    for (const auto& v : j.at("cycle")) cert.cycle.push_back(vertex_from_json(v));
    for (const auto& s : j.at("signs")) cert.signs.push_back(s.get<int>());
    cert.residual = j.value("residual", 0.0);
    if (j.contains("avoided")) cert.avoided = edge_set_from_json(j.at("avoided"));
    return cert;
}

json certificate_to_json(const CycleCertificate& cert) {
    json out;
    out["cycle"] = cert.cycle;
    out["signs"] = cert.signs;
    out["residual"] = cert.residual;
    out["avoided"] = edge_set_to_json(cert.avoided);
    return out;
}

}  // namespace flexcycle
