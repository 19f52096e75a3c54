#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "flexcycle/error.hpp"

namespace flexcycle {

using Complex = std::complex<double>;
using CVec3 = std::array<Complex, 3>;

Complex dot(const CVec3& u, const CVec3& v);  // bilinear, not Hermitian
CVec3 cross(const CVec3& u, const CVec3& v);
CVec3 sub(const CVec3& u, const CVec3& v);

// Homogeneous coordinates (x : y : z : r : h) on P^4, equality up to nonzero
// complex scaling. The quadric x^2 + y^2 + z^2 - r h = 0 hosts the model of
// Euclidean 3-space; its slice h = 0 is the locus at infinity.
struct ProjectivePoint {
    std::array<Complex, 5> coords{};

    Complex x() const { return coords[0]; }
    Complex y() const { return coords[1]; }
    Complex z() const { return coords[2]; }
    Complex r() const { return coords[3]; }
    Complex h() const { return coords[4]; }
    CVec3 xyz() const { return {coords[0], coords[1], coords[2]}; }

    // Scales so the first coordinate of non-negligible magnitude becomes 1.
    ProjectivePoint normalized() const;

    // Residual of the quadric equation on the normalized representative.
    Complex quadric_residual() const;

    // Affine (x, y, z) in the chart h = 1; requires h != 0.
    CVec3 affine() const;

    bool is_zero() const;
};

enum class PointClass { OnMFinite, OnMInfinity, OffM };

ProjectivePoint embed_point(const CVec3& q);
ProjectivePoint embed_point(double x, double y, double z);

PointClass classify_point(const ProjectivePoint& p, double tol = 1e-10);

// Projective equality of two (x:y:z) triples via 2x2 minors, after scaling
// each triple to unit max-norm. All-zero triples compare equal only to each
// other.
bool xyz_projectively_equal(const CVec3& u, const CVec3& v, double tol = 1e-10);

bool is_exceptional_infinity(const ProjectivePoint& p, double tol = 1e-10);

// Chart of the finite tangent section of the quadric at an infinite point p.
// Differences of its points lie in the orthogonal complement of the isotropic
// direction p, where the quadratic form has rank 1; the companion direction u
// realizes the one-dimensional signed length.
class FinChart {
  public:
    // p must lie on the quadric at infinity and differ from (0:0:0:1:0).
    static FinChart make(const ProjectivePoint& p, double tol = 1e-10);

    const ProjectivePoint& base() const { return base_; }
    const CVec3& direction() const { return dir_; }       // isotropic p
    const CVec3& companion() const { return u_; }         // u.u = 1, u.p = 0
    Complex base_r() const { return base_.r(); }

    bool contains(const ProjectivePoint& q, double tol = 1e-10) const;

    // (q1 - q2) . u on the affine parts; squares to the complex pseudo-
    // distance of the two points.
    Complex signed_length(const ProjectivePoint& q1, const ProjectivePoint& q2,
                          double tol = 1e-10) const;

  private:
    ProjectivePoint base_;
    CVec3 dir_{};
    CVec3 u_{};
};

struct CycleSigns {
    std::vector<int> signs;  // each +1 or -1, first entry +1
    double residual;         // |sum_j signs[j] * lengths[j]|
};

// Signs eta with sum eta_j lambda_j = 0 for a closed point sequence on the
// chart, lambda_j the supplied real positive lengths consistent with the
// chart geometry. Throws "inconsistent lengths" / "non-real signed length"
// when the data cannot come from such a cycle.
CycleSigns cycle_signs_from_fin(const FinChart& chart,
                                const std::vector<ProjectivePoint>& points,
                                const std::vector<double>& lengths,
                                double tol = 1e-9);

}  // namespace flexcycle
