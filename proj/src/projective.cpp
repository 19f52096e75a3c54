#include "flexcycle/projective.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace flexcycle {

namespace {

double max_abs(const std::array<Complex, 5>& c) {
    double m = 0;
    for (const Complex& v : c) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

Complex dot(const CVec3& u, const CVec3& v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

CVec3 cross(const CVec3& u, const CVec3& v) {
    return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0]};
}

CVec3 sub(const CVec3& u, const CVec3& v) {
    return {u[0] - v[0], u[1] - v[1], u[2] - v[2]};
}

bool ProjectivePoint::is_zero() const {
    return max_abs(coords) == 0.0;
}

ProjectivePoint ProjectivePoint::normalized() const {
    if (is_zero()) throw validation_error("zero vector is not a projective point");
    const double scale = max_abs(coords);
    std::size_t pivot = 0;
    while (pivot < 5 && std::abs(coords[pivot]) <= 1e-14 * scale) ++pivot;
    ProjectivePoint out;
    for (std::size_t i = 0; i < 5; ++i) out.coords[i] = coords[i] / coords[pivot];
    return out;
}

Complex ProjectivePoint::quadric_residual() const {
    const ProjectivePoint n = normalized();
    return n.x() * n.x() + n.y() * n.y() + n.z() * n.z() - n.r() * n.h();
}

CVec3 ProjectivePoint::affine() const {
    if (std::abs(h()) == 0.0) {
        throw validation_error("point at infinity has no affine chart image");
    }
    return {x() / h(), y() / h(), z() / h()};
}

ProjectivePoint embed_point(const CVec3& q) {
    return ProjectivePoint{{q[0], q[1], q[2], dot(q, q), Complex(1.0)}};
}

ProjectivePoint embed_point(double x, double y, double z) {
    return embed_point(CVec3{Complex(x), Complex(y), Complex(z)});
}

PointClass classify_point(const ProjectivePoint& p, double tol) {
    if (p.is_zero()) throw validation_error("zero vector is not a projective point");
    const ProjectivePoint n = p.normalized();
    if (std::abs(n.quadric_residual()) > tol) return PointClass::OffM;
    const double scale = max_abs(n.coords);
    if (std::abs(n.h()) <= tol * scale) return PointClass::OnMInfinity;
    return PointClass::OnMFinite;
}

bool xyz_projectively_equal(const CVec3& u, const CVec3& v, double tol) {
    const double mu = std::max({std::abs(u[0]), std::abs(u[1]), std::abs(u[2])});
    const double mv = std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
    if (mu == 0.0 || mv == 0.0) return mu == mv;
    CVec3 un{u[0] / mu, u[1] / mu, u[2] / mu};
    CVec3 vn{v[0] / mv, v[1] / mv, v[2] / mv};
    const CVec3 c = cross(un, vn);
    return std::abs(c[0]) <= tol && std::abs(c[1]) <= tol && std::abs(c[2]) <= tol;
}

bool is_exceptional_infinity(const ProjectivePoint& p, double tol) {
    const ProjectivePoint n = p.normalized();
    const double scale = max_abs(n.coords);
    return std::abs(n.h()) <= tol * scale &&
           std::abs(n.x()) <= tol * scale &&
           std::abs(n.y()) <= tol * scale &&
           std::abs(n.z()) <= tol * scale;
}

FinChart FinChart::make(const ProjectivePoint& p, double tol) {
    if (classify_point(p, tol) != PointClass::OnMInfinity) {
        throw validation_error("chart base point must lie on the quadric at infinity");
    }
    if (is_exceptional_infinity(p, tol)) {
        throw validation_error(
            "chart is empty for the exceptional point (0:0:0:1:0)");
    }
    FinChart chart;
    chart.base_ = p.normalized();
    chart.dir_ = chart.base_.xyz();

    // The direction is isotropic, so a literal orthogonal projection is
    // unavailable; p x c is bilinearly orthogonal to p for any c, and
    // (p x c).(p x c) = -(p.c)^2 by the Lagrange identity with p.p = 0.
    const std::array<CVec3, 3> candidates = {
        CVec3{Complex(1), Complex(0), Complex(0)},
        CVec3{Complex(0), Complex(1), Complex(0)},
        CVec3{Complex(0), Complex(0), Complex(1)},
    };
    std::size_t best = 0;
    double best_abs = -1.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double a = std::abs(dot(chart.dir_, candidates[i]));
        if (a > best_abs + 1e-15) {
            best_abs = a;
            best = i;
        }
    }
    if (best_abs <= 0.0) {
        throw validation_error("degenerate chart direction");
    }
    const CVec3 raw = cross(chart.dir_, candidates[best]);
    Complex norm2 = dot(raw, raw);  // equals -(p.c)^2, nonzero
    if (norm2.imag() == 0.0) norm2.imag(+0.0);  // pin the sqrt branch at the cut
    const Complex scale = std::sqrt(norm2);
    chart.u_ = {raw[0] / scale, raw[1] / scale, raw[2] / scale};
    return chart;
}

bool FinChart::contains(const ProjectivePoint& q, double tol) const {
    const PointClass cls = classify_point(q, tol);
    if (cls == PointClass::OffM) {
        throw validation_error("point is not on the quadric");
    }
    if (cls == PointClass::OnMInfinity) return false;
    const CVec3 a = q.normalized().affine();
    const Complex residual = dot(a, dir_) - 0.5 * base_r();
    return std::abs(residual) <= tol * std::max(1.0, std::abs(dot(a, a)));
}

Complex FinChart::signed_length(const ProjectivePoint& q1,
                                const ProjectivePoint& q2, double tol) const {
    if (!contains(q1, tol) || !contains(q2, tol)) {
        throw validation_error("signed length requires both points on the chart");
    }
    const CVec3 d = sub(q1.normalized().affine(), q2.normalized().affine());
    return dot(d, u_);
}

CycleSigns cycle_signs_from_fin(const FinChart& chart,
                                const std::vector<ProjectivePoint>& points,
                                const std::vector<double>& lengths, double tol) {
    const std::size_t k = points.size();
    if (k < 2 || lengths.size() != k) {
        throw validation_error("cycle needs k >= 2 points and matching lengths");
    }
    for (double l : lengths) {
        if (!(l > 0.0)) throw validation_error("cycle lengths must be positive");
    }

    std::vector<int> signs(k, 0);
    double signed_sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        const Complex l = chart.signed_length(points[j], points[(j + 1) % k]);
        const double scale = std::max(1.0, lengths[j]);
        if (std::abs(l * l - Complex(lengths[j] * lengths[j])) >
            tol * scale * scale) {
            std::ostringstream os;
            os << "inconsistent lengths: signed length at step " << j
               << " does not square to the supplied length";
            throw validation_error(os.str());
        }
        if (std::abs(l.imag()) > tol * scale) {
            throw validation_error("non-real signed length at step " +
                                   std::to_string(j));
        }
        signs[j] = l.real() >= 0.0 ? 1 : -1;
        signed_sum += signs[j] * lengths[j];
    }
    if (signs[0] < 0) {
        for (int& s : signs) s = -s;
        signed_sum = -signed_sum;
    }
    return CycleSigns{std::move(signs), std::abs(signed_sum)};
}

}  // namespace flexcycle
