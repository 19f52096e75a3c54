#include "flexcycle/flex.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace flexcycle {

namespace {

constexpr double kDegenerateAreaTol = 1e-12;

bool pin_triangle_degenerate(const Vec3& a, const Vec3& b, const Vec3& c) {
    const double lmax = std::max({(b - a).norm(), (c - a).norm(), (c - b).norm()});
    return triangle_area(a, b, c) <= kDegenerateAreaTol * lmax * lmax;
}

}  // namespace

PinnedFrame PinnedFrame::from_realization(const Realization& rho, const Vertex& w1,
                                          const Vertex& w2, const Vertex& n) {
    if (w1 == w2 || w1 == n || w2 == n) {
        throw validation_error("pin triangle vertices must be distinct");
    }
    PinnedFrame pin{w1, w2, n, position(rho, w1), position(rho, w2), position(rho, n)};
    if (pin_triangle_degenerate(pin.anchor_w1, pin.anchor_w2, pin.anchor_n)) {
        throw validation_error("degenerate pin triangle (" + w1 + "," + w2 + "," + n + ")");
    }
    return pin;
}

ConstraintSystem::ConstraintSystem(const Skeleton& g, const Realization& rho0,
                                   const PinnedFrame& pin) {
    std::size_t next = 0;
    for (const Vertex& v : g.vertices()) {
        if (!index_.count(v)) index_.emplace(v, next++);
    }
    for (const auto& [v, i] : index_) {
        if (!rho0.count(v)) {
            throw validation_error("realization has no coordinates for vertex " + v);
        }
    }

    // Constrained pairs: every edge, plus all pairs inside non-triangular
    // faces (face images must stay congruent along a flex of a 2-skeleton).
    std::set<Edge> pair_set(g.edges().begin(), g.edges().end());
    for (const Face& f : g.faces()) {
        if (f.size() <= 3) continue;
        for (std::size_t i = 0; i < f.size(); ++i) {
            for (std::size_t j = i + 1; j < f.size(); ++j) {
                if (f[i] != f[j]) pair_set.insert(Edge(f[i], f[j]));
            }
        }
    }
    for (const Edge& e : pair_set) {
        pairs_.emplace_back(e.a, e.b);
        const double len = (position(rho0, e.a) - position(rho0, e.b)).norm();
        if (len == 0.0) {
            throw validation_error("degenerate edge " + e.str() + ": endpoints coincide");
        }
        target_len_.push_back(len);
        target_sq_.push_back(len * len);
    }

    for (const Vertex& v : {pin.w1, pin.w2, pin.n}) {
        if (!index_.count(v)) {
            throw validation_error("pin vertex " + v + " is not in the skeleton");
        }
    }
    if (pin_triangle_degenerate(pin.anchor_w1, pin.anchor_w2, pin.anchor_n)) {
        throw validation_error("degenerate pin triangle");
    }
    pin_index_ = {index_.at(pin.w1), index_.at(pin.w2), index_.at(pin.n)};
    pin_anchor_ = {pin.anchor_w1, pin.anchor_w2, pin.anchor_n};
}

Eigen::VectorXd ConstraintSystem::pack(const Realization& rho) const {
    Eigen::VectorXd x(variables());
    for (const auto& [v, i] : index_) {
        x.segment<3>(3 * i) = position(rho, v);
    }
    return x;
}

Realization ConstraintSystem::unpack(const Eigen::VectorXd& x) const {
    Realization rho;
    for (const auto& [v, i] : index_) {
        rho[v] = x.segment<3>(3 * i);
    }
    return rho;
}

Eigen::VectorXd ConstraintSystem::residual(const Eigen::VectorXd& x) const {
    Eigen::VectorXd f(equations());
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
        const std::size_t i = index_.at(pairs_[k].first);
        const std::size_t j = index_.at(pairs_[k].second);
        const Eigen::Vector3d d = x.segment<3>(3 * i) - x.segment<3>(3 * j);
        f(k) = d.squaredNorm() - target_sq_[k];
    }
    for (std::size_t p = 0; p < 3; ++p) {
        f.segment<3>(pairs_.size() + 3 * p) =
            x.segment<3>(3 * pin_index_[p]) - pin_anchor_[p];
    }
    return f;
}

Eigen::MatrixXd ConstraintSystem::jacobian(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(equations(), variables());
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
        const std::size_t i = index_.at(pairs_[k].first);
        const std::size_t j = index_.at(pairs_[k].second);
        const Eigen::Vector3d d = x.segment<3>(3 * i) - x.segment<3>(3 * j);
        jac.block<1, 3>(k, 3 * i) = 2.0 * d.transpose();
        jac.block<1, 3>(k, 3 * j) = -2.0 * d.transpose();
    }
    for (std::size_t p = 0; p < 3; ++p) {
        for (std::size_t c = 0; c < 3; ++c) {
            jac(pairs_.size() + 3 * p + c, 3 * pin_index_[p] + c) = 1.0;
        }
    }
    return jac;
}

double ConstraintSystem::max_length_residual(const Eigen::VectorXd& x) const {
    double worst = 0.0;
    for (std::size_t k = 0; k < pairs_.size(); ++k) {
        const std::size_t i = index_.at(pairs_[k].first);
        const std::size_t j = index_.at(pairs_[k].second);
        const double len = (x.segment<3>(3 * i) - x.segment<3>(3 * j)).norm();
        worst = std::max(worst, std::abs(len - target_len_[k]));
    }
    for (std::size_t p = 0; p < 3; ++p) {
        worst = std::max(worst, (x.segment<3>(3 * pin_index_[p]) - pin_anchor_[p])
                                    .cwiseAbs()
                                    .maxCoeff());
    }
    return worst;
}

Eigen::VectorXd ConstraintSystem::distance_vector(const Eigen::VectorXd& x) const {
    const std::size_t n = index_.size();
    Eigen::VectorXd d(n * (n - 1) / 2);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            d(k++) = (x.segment<3>(3 * i) - x.segment<3>(3 * j)).norm();
        }
    }
    return d;
}

namespace {

struct KernelInfo {
    int dimension;
    Eigen::VectorXd vector;  // unit kernel vector when dimension >= 1
};

KernelInfo kernel_of(const Eigen::MatrixXd& jac, double rank_tol) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double smax = sigma.size() > 0 ? sigma(0) : 0.0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) >= rank_tol * smax && sigma(i) > 0.0) ++rank;
    }
    const int dim = static_cast<int>(jac.cols()) - rank;
    KernelInfo info{dim, Eigen::VectorXd()};
    if (dim >= 1) {
        info.vector = svd.matrixV().col(jac.cols() - dim).normalized();
    }
    return info;
}

// Gauss-Newton onto the constraint set with a minimum-norm least-squares
// step; the Jacobian is rank-deficient along the tangent, so the SVD solve
// needs the rank threshold.
bool gauss_newton(const ConstraintSystem& sys, Eigen::VectorXd& x, double tol,
                  double rank_tol) {
    double best = sys.max_length_residual(x);
    for (int iter = 0; iter < 40; ++iter) {
        if (sys.max_length_residual(x) < tol) return true;
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(
            sys.jacobian(x), Eigen::ComputeThinU | Eigen::ComputeThinV);
        svd.setThreshold(rank_tol);
        const Eigen::VectorXd delta = svd.solve(-sys.residual(x));
        if (!delta.allFinite()) return false;
        x += delta;
        const double res = sys.max_length_residual(x);
        if (!std::isfinite(res) || res > 1e3 * (best + 1.0)) return false;
        best = std::min(best, res);
    }
    return sys.max_length_residual(x) < tol;
}

// Isometry-invariant orientation for the first predictor: make the strongest
// first-order change of a vertex-pair distance positive.
void orient_first_step(const ConstraintSystem& sys, const Eigen::VectorXd& x,
                       Eigen::VectorXd& k) {
    const std::size_t n = sys.variables() / 3;
    double best_abs = 0.0;
    double best_val = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const Eigen::Vector3d dq = x.segment<3>(3 * i) - x.segment<3>(3 * j);
            const Eigen::Vector3d dk = k.segment<3>(3 * i) - k.segment<3>(3 * j);
            const double val = dq.dot(dk);
            if (std::abs(val) > best_abs) {
                best_abs = std::abs(val);
                best_val = val;
            }
        }
    }
    if (best_val < 0.0) k = -k;
}

}  // namespace

int flex_dimension(const Skeleton& g, const Realization& rho,
                   const PinnedFrame& pin, double rank_tol) {
    ConstraintSystem sys(g, rho, pin);
    const Eigen::VectorXd x = sys.pack(rho);
    return kernel_of(sys.jacobian(x), rank_tol).dimension;
}

SampledFlex trace_flex(const Skeleton& g, const Realization& rho0,
                       const PinnedFrame& pin, const TraceOptions& opts) {
    ConstraintSystem sys(g, rho0, pin);
    Eigen::VectorXd x = sys.pack(rho0);
    if (sys.max_length_residual(x) > opts.corrector_tol) {
        throw validation_error("initial realization violates the pin anchors");
    }

    KernelInfo kernel = kernel_of(sys.jacobian(x), opts.rank_tol);
    if (kernel.dimension == 0) {
        throw rigid_error("rigid: the pinned realization admits no infinitesimal flex");
    }
    if (kernel.dimension > 1) {
        std::ostringstream os;
        os << "tangent space has dimension " << kernel.dimension
           << "; only one-parameter flexes are traced";
        throw numerical_error(os.str());
    }
    orient_first_step(sys, x, kernel.vector);

    SampledFlex flex;
    flex.t.push_back(0.0);
    flex.samples.push_back(sys.unpack(x));

    Eigen::VectorXd dist_prev = sys.distance_vector(x);
    double arclen = 0.0;
    double h = opts.step;

    while (flex.size() < opts.max_samples) {
        if (h < opts.min_step) {
            if (flex.size() == 1) {
                throw numerical_error("corrector divergence at t=0: step underflow "
                                      "before the first accepted sample");
            }
            break;  // step-size underflow ends the trace
        }

        Eigen::VectorXd x_new = x + h * kernel.vector;
        if (!gauss_newton(sys, x_new, opts.corrector_tol, opts.rank_tol)) {
            h *= 0.5;
            continue;
        }
        const Eigen::VectorXd dist_new = sys.distance_vector(x_new);
        if ((dist_new - dist_prev).cwiseAbs().maxCoeff() <= opts.progress_tol) {
            h *= 0.5;  // congruent with the previous sample; no progress
            continue;
        }

        KernelInfo next = kernel_of(sys.jacobian(x_new), opts.rank_tol);
        if (next.dimension != 1) {
            std::ostringstream os;
            os << "branch point near t=" << arclen / (1.0 + arclen)
               << ": kernel dimension jumped to " << next.dimension;
            throw numerical_error(os.str());
        }
        if (next.vector.dot(kernel.vector) < 0.0) next.vector = -next.vector;

        x = x_new;
        kernel = next;
        dist_prev = dist_new;
        arclen += h;
        flex.t.push_back(arclen / (1.0 + arclen));
        flex.samples.push_back(sys.unpack(x));
        h = std::min(h * 1.5, opts.step);
    }
    return flex;
}

namespace {

double relative_variation(const std::vector<double>& values) {
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    if (*mx == 0.0) return 0.0;
    return (*mx - *mn) / *mx;
}

void require_samples(const SampledFlex& flex) {
    if (flex.size() < 2) {
        throw validation_error("classification requires at least 2 flex samples");
    }
}

}  // namespace

EdgeClassification classify_edges(const TriangularSkeleton& t,
                                  const SampledFlex& flex, double tol) {
    require_samples(flex);
    EdgeClassification cls;
    for (const Edge& e : t.edges()) {
        auto opp = t.opposite_vertices(e);
        std::sort(opp.begin(), opp.end(), vertex_less);
        opp.erase(std::unique(opp.begin(), opp.end()), opp.end());
        if (opp.size() != 2) {
            // Boundary-style edge: constant by convention.
            cls.e_const.insert(e);
            cls.variation[e] = 0.0;
            continue;
        }
        std::vector<double> dist;
        dist.reserve(flex.size());
        for (const Realization& rho : flex.samples) {
            dist.push_back((position(rho, opp[0]) - position(rho, opp[1])).norm());
        }
        const double var = relative_variation(dist);
        cls.variation[e] = var;
        (var < tol ? cls.e_const : cls.e_moving).insert(e);
    }
    return cls;
}

EdgeClassification classify_edges_profile(const Skeleton& h,
                                          const SampledFlex& flex, double tol) {
    require_samples(flex);
    EdgeClassification cls;
    for (const Edge& e : h.edges()) {
        const auto incident = h.faces_at(e);
        if (incident.size() != 2) {
            cls.e_const.insert(e);
            cls.variation[e] = 0.0;
            continue;
        }
        const Face& fa = h.faces()[incident[0]];
        const Face& fb = h.faces()[incident[1]];
        std::vector<std::vector<double>> profiles;
        profiles.reserve(flex.size());
        for (const Realization& rho : flex.samples) {
            profiles.push_back(face_pair_profile(rho, fa, fb));
        }
        double var = 0.0;
        for (std::size_t j = 0; j < profiles.front().size(); ++j) {
            std::vector<double> entry;
            entry.reserve(profiles.size());
            for (const auto& p : profiles) entry.push_back(p[j]);
            var = std::max(var, relative_variation(entry));
        }
        cls.variation[e] = var;
        (var < tol ? cls.e_const : cls.e_moving).insert(e);
    }
    return cls;
}

std::set<Edge> constant_distance_pairs(const std::vector<Vertex>& vertices,
                                       const SampledFlex& flex, double tol) {
    require_samples(flex);
    std::set<Edge> constant;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        for (std::size_t j = i + 1; j < vertices.size(); ++j) {
            if (vertices[i] == vertices[j]) continue;
            std::vector<double> dist;
            dist.reserve(flex.size());
            for (const Realization& rho : flex.samples) {
                dist.push_back(
                    (position(rho, vertices[i]) - position(rho, vertices[j])).norm());
            }
            if (relative_variation(dist) < tol) {
                constant.insert(Edge(vertices[i], vertices[j]));
            }
        }
    }
    return constant;
}

ValidationReport validate_flex(const Skeleton& g, const SampledFlex& flex,
                               const FlexValidationOptions& opts) {
    ValidationReport report;
    if (flex.samples.empty() || flex.t.size() != flex.samples.size()) {
        report.violations.push_back({"flex_shape", "samples and parameters differ in length or are empty"});
        return report;
    }
    if (flex.t.front() != 0.0) {
        report.violations.push_back({"flex_t0", "first parameter must be 0"});
    }
    for (std::size_t i = 0; i < flex.t.size(); ++i) {
        if (flex.t[i] < 0.0 || flex.t[i] >= 1.0) {
            report.violations.push_back({"flex_t_range", "parameter out of [0,1) at index " + std::to_string(i)});
        }
        if (i > 0 && flex.t[i] <= flex.t[i - 1]) {
            report.violations.push_back({"flex_t_order", "parameters not strictly increasing at index " + std::to_string(i)});
        }
    }
    for (const Realization& rho : flex.samples) {
        for (const Vertex& v : g.vertices()) {
            if (!rho.count(v)) {
                report.violations.push_back({"flex_missing_vertex", "sample lacks vertex " + v});
                return report;
            }
        }
    }

    // Constrained pairs keep their initial distances.
    std::set<Edge> pair_set(g.edges().begin(), g.edges().end());
    if (opts.check_faces) {
        for (const Face& f : g.faces()) {
            for (std::size_t i = 0; i < f.size(); ++i) {
                for (std::size_t j = i + 1; j < f.size(); ++j) {
                    if (f[i] != f[j]) pair_set.insert(Edge(f[i], f[j]));
                }
            }
        }
    }
    const Realization& rho0 = flex.initial();
    for (const Edge& e : pair_set) {
        const double len0 = (position(rho0, e.a) - position(rho0, e.b)).norm();
        if (len0 == 0.0 && g.has_edge(e)) {
            report.violations.push_back({"degenerate_edge", "edge " + e.str() + " has coincident endpoints"});
            continue;
        }
        for (std::size_t s = 1; s < flex.size(); ++s) {
            const Realization& rho = flex.samples[s];
            const double len = (position(rho, e.a) - position(rho, e.b)).norm();
            if (std::abs(len - len0) > opts.length_tol * std::max(1.0, len0)) {
                report.violations.push_back(
                    {"length_drift", "pair " + e.str() + " changes length at sample " +
                                         std::to_string(s)});
                break;
            }
        }
    }

    // Consecutive samples must actually move (non-congruence at sampled resolution).
    const auto& vertices = g.vertices();
    for (std::size_t s = 1; s < flex.size(); ++s) {
        double max_diff = 0.0;
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            for (std::size_t j = i + 1; j < vertices.size(); ++j) {
                const double a = (position(flex.samples[s - 1], vertices[i]) -
                                  position(flex.samples[s - 1], vertices[j]))
                                     .norm();
                const double b = (position(flex.samples[s], vertices[i]) -
                                  position(flex.samples[s], vertices[j]))
                                     .norm();
                max_diff = std::max(max_diff, std::abs(a - b));
            }
        }
        if (max_diff <= opts.progress_tol) {
            report.violations.push_back(
                {"congruent_samples", "samples " + std::to_string(s - 1) + " and " +
                                          std::to_string(s) + " are congruent"});
        }
    }
    return report;
}

}  // namespace flexcycle
