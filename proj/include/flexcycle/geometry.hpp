#pragma once

#include <Eigen/Core>
#include <map>
#include <vector>

#include "flexcycle/skeleton.hpp"

namespace flexcycle {

using Vec3 = Eigen::Vector3d;

// Assignment of 3D coordinates to vertices.
using Realization = std::map<Vertex, Vec3>;

using EdgeLengthMap = std::map<Edge, double>;

const Vec3& position(const Realization& rho, const Vertex& v);

// Induced edge lengths; throws on a coincident edge ("degenerate edge").
EdgeLengthMap edge_length_map(const Skeleton& g, const Realization& rho);

// Unsigned dihedral angle in [0, pi] at edge e between the triangles (e, a)
// and (e, b): pi for coplanar triangles on opposite sides, 0 for coincident
// ones, arccos(1/3) for regular-tetrahedron faces.
double dihedral_angle(const Realization& rho, const Edge& e, const Vertex& a,
                      const Vertex& b);

// Sorted distances over all unordered pairs {u, v}, u in fa, v in fb, u != v
// (deduplicated). Constant across realizations iff the two faces keep their
// relative position.
std::vector<double> face_pair_profile(const Realization& rho, const Face& fa,
                                      const Face& fb);

struct DegenerateFace {
    Face face;
    double area;
    double longest_side;
};

struct NondegeneracyReport {
    std::vector<DegenerateFace> degenerate;

    bool ok() const { return degenerate.empty(); }
};

// Flags every triangle whose area is at most tol * (longest side)^2.
NondegeneracyReport check_nondegenerate(const TriangularSkeleton& t,
                                        const Realization& rho,
                                        double tol = 1e-9);

double triangle_area(const Vec3& p, const Vec3& q, const Vec3& r);

}  // namespace flexcycle
