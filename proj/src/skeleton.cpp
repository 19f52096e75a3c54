#include "flexcycle/skeleton.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace flexcycle {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

std::string face_str(const Face& f) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) os << ",";
        os << f[i];
    }
    os << ")";
    return os.str();
}

}  // namespace

bool vertex_less(const Vertex& a, const Vertex& b) {
    const bool na = all_digits(a);
    const bool nb = all_digits(b);
    if (na != nb) return na;  // numeric ids sort before named ones
    if (na && nb) {
        // Compare as nonnegative integers without overflow: by length, then text.
        const auto sa = a.find_first_not_of('0');
        const auto sb = b.find_first_not_of('0');
        std::string ta = sa == std::string::npos ? "0" : a.substr(sa);
        std::string tb = sb == std::string::npos ? "0" : b.substr(sb);
        if (ta.size() != tb.size()) return ta.size() < tb.size();
        if (ta != tb) return ta < tb;
        return a < b;  // equal values, distinct zero padding
    }
    return a < b;
}

Edge::Edge(Vertex u, Vertex v) : a(std::move(u)), b(std::move(v)) {
    if (vertex_less(b, a)) std::swap(a, b);
}

bool Edge::operator<(const Edge& rhs) const {
    if (a != rhs.a) return vertex_less(a, rhs.a);
    if (b != rhs.b) return vertex_less(b, rhs.b);
    return false;
}

Skeleton::Skeleton(std::vector<Vertex> vertices, std::vector<Face> faces)
    : vertices_(std::move(vertices)), faces_(std::move(faces)) {
    std::sort(vertices_.begin(), vertices_.end(), vertex_less);
    for (std::size_t fi = 0; fi < faces_.size(); ++fi) {
        const Face& f = faces_[fi];
        for (std::size_t i = 0; i < f.size(); ++i) {
            const Vertex& u = f[i];
            const Vertex& v = f[(i + 1) % f.size()];
            if (u == v) continue;  // self-loop; reported by validate()
            Edge e(u, v);
            edges_.insert(e);
            edge_faces_[e].push_back(fi);
        }
    }
}

bool Skeleton::has_vertex(const Vertex& v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v, vertex_less);
}

bool Skeleton::is_triangular() const {
    return std::all_of(faces_.begin(), faces_.end(),
                       [](const Face& f) { return f.size() == 3; });
}

std::vector<std::size_t> Skeleton::faces_at(const Edge& e) const {
    auto it = edge_faces_.find(e);
    if (it == edge_faces_.end()) return {};
    return it->second;
}

std::vector<Vertex> Skeleton::neighbors(const Vertex& v) const {
    std::vector<Vertex> out;
    for (const Edge& e : edges_) {
        if (e.contains(v)) out.push_back(e.other(v));
    }
    std::sort(out.begin(), out.end(), vertex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string Skeleton::canonical_key() const {
    std::ostringstream os;
    for (const Edge& e : edges_) os << e.a << "|" << e.b << ";";
    return os.str();
}

ValidationReport validate_skeleton(const Skeleton& h) {
    ValidationReport report;

    for (std::size_t i = 0; i + 1 < h.vertices().size(); ++i) {
        if (h.vertices()[i] == h.vertices()[i + 1]) {
            report.violations.push_back(
                {"duplicate_vertex", "vertex listed twice: " + h.vertices()[i]});
        }
    }

    for (const Face& f : h.faces()) {
        if (f.size() < 3) {
            report.violations.push_back(
                {"face_too_short", "face with fewer than 3 vertices: " + face_str(f)});
            continue;
        }
        for (const Vertex& v : f) {
            if (!h.has_vertex(v)) {
                report.violations.push_back(
                    {"unknown_vertex", "face " + face_str(f) + " uses unknown vertex " + v});
            }
        }
        std::set<Vertex> seen;
        bool repeated = false;
        for (const Vertex& v : f) repeated |= !seen.insert(v).second;
        if (repeated) {
            report.violations.push_back(
                {"repeated_face_vertex", "face with repeated vertices: " + face_str(f)});
        }
    }

    // Every edge in exactly two faces, counted with multiplicity.
    for (const Edge& e : h.edges()) {
        const std::size_t count = h.faces_at(e).size();
        if (count != 2) {
            std::ostringstream os;
            os << "edge " << e.str() << " is in exactly " << count
               << (count == 1 ? " face" : " faces") << ", expected 2";
            report.violations.push_back({"edge_face_count", os.str()});
        }
    }

    return report;
}

Graph::Graph(std::vector<Vertex> v, std::set<Edge> e)
    : vertices(std::move(v)), edges(std::move(e)) {
    std::sort(vertices.begin(), vertices.end(), vertex_less);
}

Graph::Graph(const Skeleton& s) : vertices(s.vertices()), edges(s.edges()) {}

std::vector<Vertex> Graph::neighbors(const Vertex& v) const {
    std::vector<Vertex> out;
    for (const Edge& e : edges) {
        if (e.contains(v)) out.push_back(e.other(v));
    }
    std::sort(out.begin(), out.end(), vertex_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

TriangularSkeleton::TriangularSkeleton(Skeleton skeleton)
    : skeleton_(std::move(skeleton)) {
    for (const Face& f : skeleton_.faces()) {
        if (f.size() != 3) {
            throw validation_error("not a triangular skeleton: face " + face_str(f) +
                                   " has " + std::to_string(f.size()) + " vertices");
        }
    }
}

std::vector<Vertex> TriangularSkeleton::opposite_vertices(const Edge& e) const {
    std::vector<Vertex> out;
    for (std::size_t fi : skeleton_.faces_at(e)) {
        for (const Vertex& v : skeleton_.faces()[fi]) {
            if (!e.contains(v)) out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end(), vertex_less);
    return out;
}

std::pair<Vertex, Vertex> TriangularSkeleton::two_opposites(const Edge& e) const {
    if (!skeleton_.has_edge(e)) {
        throw validation_error("edge " + e.str() + " is not in the skeleton");
    }
    auto opp = opposite_vertices(e);
    if (opp.size() != 2) {
        throw validation_error("edge " + e.str() + " lies in " +
                               std::to_string(opp.size()) + " triangles, expected 2");
    }
    if (opp[0] == opp[1]) {
        throw validation_error("edge " + e.str() +
                               " has coincident opposite vertices (" + opp[0] + ")");
    }
    return {opp[0], opp[1]};
}

DistinguishedEdge DistinguishedEdge::make(const TriangularSkeleton& t, const Edge& e,
                                          const Vertex& south, const Vertex& north) {
    auto [o1, o2] = t.two_opposites(e);
    const bool matches = (south == o1 && north == o2) || (south == o2 && north == o1);
    if (!matches) {
        throw validation_error("south/north (" + south + "," + north +
                               ") are not the opposite vertices of " + e.str());
    }
    return DistinguishedEdge{e, south, north};
}

Face canonical_face(const Face& f) {
    if (f.empty()) return f;
    const auto min_it = std::min_element(f.begin(), f.end(), vertex_less);
    const std::size_t k = f.size();
    const std::size_t start = static_cast<std::size_t>(min_it - f.begin());
    Face fwd(k), rev(k);
    for (std::size_t i = 0; i < k; ++i) {
        fwd[i] = f[(start + i) % k];
        rev[i] = f[(start + k - i) % k];
    }
    return std::lexicographical_compare(fwd.begin(), fwd.end(), rev.begin(),
                                        rev.end(), vertex_less)
               ? fwd
               : rev;
}

std::vector<Face> canonical_face_list(const Skeleton& s) {
    std::vector<Face> out;
    out.reserve(s.faces().size());
    for (const Face& f : s.faces()) out.push_back(canonical_face(f));
    std::sort(out.begin(), out.end(), [](const Face& a, const Face& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                            vertex_less);
    });
    return out;
}

bool same_skeleton(const Skeleton& a, const Skeleton& b) {
    return a.vertices() == b.vertices() &&
           canonical_face_list(a) == canonical_face_list(b);
}

Vertex min_vertex_anchor(const Face& face) {
    return *std::min_element(face.begin(), face.end(), vertex_less);
}

FanTriangulation triangulate_fan(const Skeleton& h, const AnchorRule& anchor) {
    auto pre = validate_skeleton(h);
    if (!pre.ok()) {
        throw validation_error("triangulate_fan requires a valid 2-skeleton; first violation: " +
                               pre.violations.front().message);
    }

    std::vector<Face> triangles;
    std::set<Edge> diagonals;
    for (const Face& f : h.faces()) {
        const Vertex a = anchor(f);
        const auto pos = std::find(f.begin(), f.end(), a);
        if (pos == f.end()) {
            throw validation_error("anchor rule returned a vertex outside face");
        }
        Face rotated;
        rotated.reserve(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
            rotated.push_back(f[(static_cast<std::size_t>(pos - f.begin()) + i) % f.size()]);
        }
        for (std::size_t i = 1; i + 1 < rotated.size(); ++i) {
            triangles.push_back({rotated[0], rotated[i], rotated[i + 1]});
            if (i >= 2) {
                Edge d(rotated[0], rotated[i]);
                if (!h.has_edge(d)) diagonals.insert(d);
            }
        }
    }

    Skeleton out(h.vertices(), std::move(triangles));
    auto post = validate_skeleton(out);
    if (!post.ok()) {
        throw validation_error("triangulation produced an invalid 2-skeleton: " +
                               post.violations.front().message);
    }
    return FanTriangulation{TriangularSkeleton(std::move(out)), std::move(diagonals)};
}

}  // namespace flexcycle
