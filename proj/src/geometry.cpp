#include "flexcycle/geometry.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>

namespace flexcycle {

const Vec3& position(const Realization& rho, const Vertex& v) {
    auto it = rho.find(v);
    if (it == rho.end()) {
        throw validation_error("realization has no coordinates for vertex " + v);
    }
    return it->second;
}

EdgeLengthMap edge_length_map(const Skeleton& g, const Realization& rho) {
    EdgeLengthMap lengths;
    for (const Edge& e : g.edges()) {
        const double len = (position(rho, e.a) - position(rho, e.b)).norm();
        if (len == 0.0) {
            throw validation_error("degenerate edge " + e.str() +
                                   ": endpoints coincide");
        }
        lengths.emplace(e, len);
    }
    return lengths;
}

double triangle_area(const Vec3& p, const Vec3& q, const Vec3& r) {
    return 0.5 * (q - p).cross(r - p).norm();
}

namespace {

// Component of x - p orthogonal to the edge direction d (unit).
Vec3 hinge_offset(const Vec3& x, const Vec3& p, const Vec3& d) {
    const Vec3 rel = x - p;
    return rel - rel.dot(d) * d;
}

bool triangle_degenerate(const Vec3& p, const Vec3& q, const Vec3& r) {
    const double lmax =
        std::max({(q - p).norm(), (r - p).norm(), (r - q).norm()});
    return triangle_area(p, q, r) <= 1e-12 * lmax * lmax;
}

}  // namespace

double dihedral_angle(const Realization& rho, const Edge& e, const Vertex& a,
                      const Vertex& b) {
    const Vec3& p = position(rho, e.a);
    const Vec3& q = position(rho, e.b);
    const Vec3& pa = position(rho, a);
    const Vec3& pb = position(rho, b);

    if (triangle_degenerate(p, q, pa)) {
        throw validation_error("degenerate face (" + e.a + "," + e.b + "," + a + ")");
    }
    if (triangle_degenerate(p, q, pb)) {
        throw validation_error("degenerate face (" + e.a + "," + e.b + "," + b + ")");
    }

    const Vec3 d = (q - p).normalized();
    const Vec3 u = hinge_offset(pa, p, d);
    const Vec3 v = hinge_offset(pb, p, d);
    const double c = u.dot(v) / (u.norm() * v.norm());
    return std::acos(std::clamp(c, -1.0, 1.0));
}

std::vector<double> face_pair_profile(const Realization& rho, const Face& fa,
                                      const Face& fb) {
    std::set<Edge> pairs;
    for (const Vertex& u : fa) {
        for (const Vertex& v : fb) {
            if (u != v) pairs.insert(Edge(u, v));
        }
    }
    std::vector<double> profile;
    profile.reserve(pairs.size());
    for (const Edge& p : pairs) {
        profile.push_back((position(rho, p.a) - position(rho, p.b)).norm());
    }
    std::sort(profile.begin(), profile.end());
    return profile;
}

NondegeneracyReport check_nondegenerate(const TriangularSkeleton& t,
                                        const Realization& rho, double tol) {
    NondegeneracyReport report;
    for (const Face& f : t.faces()) {
        const Vec3& p = position(rho, f[0]);
        const Vec3& q = position(rho, f[1]);
        const Vec3& r = position(rho, f[2]);
        const double area = triangle_area(p, q, r);
        const double lmax =
            std::max({(q - p).norm(), (r - p).norm(), (r - q).norm()});
        if (area <= tol * lmax * lmax) {
            report.degenerate.push_back({f, area, lmax});
        }
    }
    return report;
}

}  // namespace flexcycle
