#pragma once

#include <Eigen/Core>
#include <map>
#include <set>
#include <vector>

#include "flexcycle/geometry.hpp"
#include "flexcycle/skeleton.hpp"

namespace flexcycle {

// Pinning of a non-degenerate triangle (w1, w2, n) to fixed anchor
// coordinates; removes the direct isometries from the constraint variety.
struct PinnedFrame {
    Vertex w1, w2, n;
    Vec3 anchor_w1, anchor_w2, anchor_n;

    static PinnedFrame from_realization(const Realization& rho, const Vertex& w1,
                                        const Vertex& w2, const Vertex& n);
};

// Ordered realization samples approximating a flex on [0, 1).
struct SampledFlex {
    std::vector<double> t;
    std::vector<Realization> samples;

    std::size_t size() const { return samples.size(); }
    const Realization& initial() const { return samples.front(); }
};

struct EdgeClassification {
    std::set<Edge> e_const;
    std::set<Edge> e_moving;
    std::map<Edge, double> variation;  // relative variation statistic per edge
};

// Distance constraint system for a pinned skeleton: one squared-distance
// equation per constrained vertex pair (edges plus, for non-triangular faces,
// all within-face pairs so that face images stay congruent), plus nine
// pinning equations. Variables are the stacked vertex coordinates.
class ConstraintSystem {
  public:
    ConstraintSystem(const Skeleton& g, const Realization& rho0,
                     const PinnedFrame& pin);

    std::size_t variables() const { return 3 * index_.size(); }
    std::size_t equations() const { return pairs_.size() + 9; }
    const std::vector<std::pair<Vertex, Vertex>>& pairs() const { return pairs_; }

    Eigen::VectorXd pack(const Realization& rho) const;
    Realization unpack(const Eigen::VectorXd& x) const;

    Eigen::VectorXd residual(const Eigen::VectorXd& x) const;
    Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const;

    // Max distance deviation |dist - target| over pairs and |coord - anchor|
    // over pins; the convergence measure for the corrector.
    double max_length_residual(const Eigen::VectorXd& x) const;

    // All-pairs vertex distance matrix (condensed), for congruence checks.
    Eigen::VectorXd distance_vector(const Eigen::VectorXd& x) const;

  private:
    std::map<Vertex, std::size_t> index_;
    std::vector<std::pair<Vertex, Vertex>> pairs_;  // by vertex index order
    std::vector<double> target_sq_;                 // squared target distances
    std::vector<double> target_len_;
    std::array<std::size_t, 3> pin_index_;
    std::array<Vec3, 3> pin_anchor_;
};

// Dimension of the Jacobian kernel at rho; rank decided by singular values
// >= rank_tol * largest.
int flex_dimension(const Skeleton& g, const Realization& rho,
                   const PinnedFrame& pin, double rank_tol = 1e-8);

struct TraceOptions {
    double step = 1e-2;
    std::size_t max_samples = 100;  // total samples, including the initial one
    double corrector_tol = 1e-9;
    double rank_tol = 1e-8;
    double min_step = 1e-8;        // step-size floor; underflow ends the trace
    double progress_tol = 1e-10;   // required distance-matrix movement per step
};

// Predictor-corrector continuation along the one-dimensional constraint
// variety: unit kernel vector as predictor (orientation kept continuous),
// Gauss-Newton corrector back onto the constraint set.
SampledFlex trace_flex(const Skeleton& g, const Realization& rho0,
                       const PinnedFrame& pin, const TraceOptions& opts = {});

// Triangular classification: an edge is constant iff the distance between its
// two opposite vertices varies by less than tol (relative) over the samples.
// Edges without two distinct opposite vertices are constant by convention.
EdgeClassification classify_edges(const TriangularSkeleton& t,
                                  const SampledFlex& flex, double tol = 1e-7);

// General 2-skeleton classification via face-pair-profile constancy.
EdgeClassification classify_edges_profile(const Skeleton& h,
                                          const SampledFlex& flex,
                                          double tol = 1e-7);

// All unordered vertex pairs (edges or not) whose distance varies by less
// than tol (relative) across the samples.
std::set<Edge> constant_distance_pairs(const std::vector<Vertex>& vertices,
                                       const SampledFlex& flex,
                                       double tol = 1e-7);

struct FlexValidationOptions {
    double length_tol = 1e-7;    // relative edge-length drift allowed
    double progress_tol = 1e-10; // minimum motion between consecutive samples
    bool check_faces = true;     // enforce within-face congruence
};

// Re-validation of an externally supplied flex against its skeleton.
ValidationReport validate_flex(const Skeleton& g, const SampledFlex& flex,
                               const FlexValidationOptions& opts = {});

}  // namespace flexcycle
