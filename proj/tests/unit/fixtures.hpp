#pragma once

// Shared test fixtures: the classical octahedra, a hinge, and a quad cube.

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "flexcycle/geometry.hpp"
#include "flexcycle/json_io.hpp"
#include "flexcycle/skeleton.hpp"

namespace fixtures {

using namespace flexcycle;

inline Skeleton octahedron_skeleton() {
    return Skeleton({"px", "mx", "py", "my", "pz", "mz"},
                    {{"pz", "px", "py"},
                     {"pz", "py", "mx"},
                     {"pz", "mx", "my"},
                     {"pz", "my", "px"},
                     {"mz", "px", "py"},
                     {"mz", "py", "mx"},
                     {"mz", "mx", "my"},
                     {"mz", "my", "px"}});
}

inline Realization octahedron_realization() {
    return {{"px", Vec3(1, 0, 0)},  {"mx", Vec3(-1, 0, 0)}, {"py", Vec3(0, 1, 0)},
            {"my", Vec3(0, -1, 0)}, {"pz", Vec3(0, 0, 1)},  {"mz", Vec3(0, 0, -1)}};
}

// Half-turn-symmetric octahedron: sigma = rotation by pi about the z-axis,
// equator C = sigma(A), D = sigma(B), apexes swapped by sigma.
inline Skeleton bricard_skeleton() {
    return Skeleton({"A", "B", "C", "D", "N", "S"},
                    {{"N", "A", "B"},
                     {"N", "B", "C"},
                     {"N", "C", "D"},
                     {"N", "D", "A"},
                     {"S", "A", "B"},
                     {"S", "B", "C"},
                     {"S", "C", "D"},
                     {"S", "D", "A"}});
}

inline Realization bricard_realization() {
    const auto sigma = [](const Vec3& p) { return Vec3(-p.x(), -p.y(), p.z()); };
    const Vec3 a(1.2, 0.7, 0.0), b(-0.5, 1.3, -0.2), n(0.9, -0.4, 1.1);
    return {{"A", a}, {"B", b}, {"C", sigma(a)}, {"D", sigma(b)},
            {"N", n}, {"S", sigma(n)}};
}

inline Skeleton hinge_skeleton() {
    return Skeleton({"a", "b", "c", "d"}, {{"a", "b", "c"}, {"a", "b", "d"}});
}

inline Realization hinge_realization() {
    return {{"a", Vec3(0, 0, 0)},
            {"b", Vec3(1, 0, 0)},
            {"c", Vec3(0.5, 1.0, 0.0)},
            {"d", Vec3(0.5, -0.8, 0.3)}};
}

inline Skeleton cube_skeleton() {
    return Skeleton({"v0", "v1", "v2", "v3", "v4", "v5", "v6", "v7"},
                    {{"v0", "v1", "v2", "v3"},
                     {"v4", "v5", "v6", "v7"},
                     {"v0", "v1", "v5", "v4"},
                     {"v1", "v2", "v6", "v5"},
                     {"v2", "v3", "v7", "v6"},
                     {"v3", "v0", "v4", "v7"}});
}

inline Realization cube_realization() {
    return {{"v0", Vec3(0, 0, 0)}, {"v1", Vec3(1, 0, 0)}, {"v2", Vec3(1, 1, 0)},
            {"v3", Vec3(0, 1, 0)}, {"v4", Vec3(0, 0, 1)}, {"v5", Vec3(1, 0, 1)},
            {"v6", Vec3(1, 1, 1)}, {"v7", Vec3(0, 1, 1)}};
}

// Random rotation + translation; reflection when direct = false.
inline Realization apply_isometry(const Realization& rho, std::mt19937& rng,
                                  bool direct = true) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Eigen::Matrix3d m;
    do {
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m(i, j) = unit(rng);
    } while (std::abs(m.determinant()) < 1e-3);
    Eigen::HouseholderQR<Eigen::Matrix3d> qr(m);
    Eigen::Matrix3d q = qr.householderQ();
    if ((q.determinant() < 0) == direct) q.col(0) = -q.col(0);
    const Vec3 shift(unit(rng), unit(rng), unit(rng));
    Realization out;
    for (const auto& [v, p] : rho) out[v] = q * p + shift;
    return out;
}

}  // namespace fixtures
