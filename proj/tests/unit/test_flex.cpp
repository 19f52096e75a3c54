#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "flexcycle/flex.hpp"

using namespace flexcycle;
using doctest::Approx;

namespace {

PinnedFrame octahedron_pin() {
    return PinnedFrame::from_realization(fixtures::octahedron_realization(), "px",
                                         "py", "pz");
}

PinnedFrame bricard_pin() {
    return PinnedFrame::from_realization(fixtures::bricard_realization(), "A", "B", "N");
}

double max_edge_residual(const Skeleton& g, const SampledFlex& flex) {
    const EdgeLengthMap lambda = edge_length_map(g, flex.initial());
    double worst = 0;
    for (const Realization& rho : flex.samples) {
        for (const auto& [e, len] : lambda) {
            worst = std::max(worst,
                             std::abs((position(rho, e.a) - position(rho, e.b)).norm() - len));
        }
    }
    return worst;
}

}  // namespace

TEST_CASE("flex dimension separates rigid and flexible fixtures") {
    CHECK(flex_dimension(fixtures::octahedron_skeleton(),
                         fixtures::octahedron_realization(), octahedron_pin()) == 0);
    CHECK(flex_dimension(fixtures::bricard_skeleton(), fixtures::bricard_realization(),
                         bricard_pin()) == 1);

    // A pinned single triangle has no freedom at all.
    Skeleton tri({"a", "b", "c"}, {{"a", "b", "c"}, {"a", "b", "c"}});
    Realization rho{{"a", Vec3(0, 0, 0)}, {"b", Vec3(1, 0, 0)}, {"c", Vec3(0, 1, 0)}};
    CHECK(flex_dimension(tri, rho, PinnedFrame::from_realization(rho, "a", "b", "c")) == 0);
}

TEST_CASE("degenerate pin triangles are rejected") {
    Realization rho{{"a", Vec3(0, 0, 0)}, {"b", Vec3(1, 0, 0)}, {"c", Vec3(2, 0, 0)}};
    CHECK_THROWS_WITH_AS(PinnedFrame::from_realization(rho, "a", "b", "c"),
                         doctest::Contains("degenerate pin"), Error);
}

TEST_CASE("quad-faced cube is rigid under face-rigidity constraints") {
    const Skeleton cube = fixtures::cube_skeleton();
    const Realization rho = fixtures::cube_realization();
    const PinnedFrame pin = PinnedFrame::from_realization(rho, "v0", "v1", "v2");
    CHECK(flex_dimension(cube, rho, pin) == 0);
}

TEST_CASE("tracing the bricard fixture") {
    TraceOptions opts;
    opts.max_samples = 100;
    const SampledFlex flex = trace_flex(fixtures::bricard_skeleton(),
                                        fixtures::bricard_realization(), bricard_pin(),
                                        opts);
    CHECK(flex.size() == 100);
    CHECK(max_edge_residual(fixtures::bricard_skeleton(), flex) < 1e-9);
    CHECK(flex.t.front() == 0.0);
    for (std::size_t i = 1; i < flex.t.size(); ++i) {
        CHECK(flex.t[i] > flex.t[i - 1]);
        CHECK(flex.t[i] < 1.0);
    }
    CHECK(validate_flex(fixtures::bricard_skeleton(), flex).ok());
}

TEST_CASE("tracing a rigid skeleton fails loudly") {
    CHECK_THROWS_WITH_AS(trace_flex(fixtures::octahedron_skeleton(),
                                    fixtures::octahedron_realization(),
                                    octahedron_pin(), {}),
                         doctest::Contains("rigid"), Error);
}

TEST_CASE("multi-parameter tangent spaces are rejected") {
    // Two independent flaps on one shared edge: a two-dimensional motion.
    Skeleton fan({"a", "b", "c", "d", "e"},
                 {{"a", "b", "c"}, {"a", "b", "d"}, {"a", "b", "e"}});
    Realization rho{{"a", Vec3(0, 0, 0)},
                    {"b", Vec3(1, 0, 0)},
                    {"c", Vec3(0.5, 1.0, 0.0)},
                    {"d", Vec3(0.5, -0.8, 0.3)},
                    {"e", Vec3(0.5, 0.1, -0.9)}};
    const PinnedFrame pin = PinnedFrame::from_realization(rho, "a", "b", "c");
    CHECK(flex_dimension(fan, rho, pin) == 2);
    CHECK_THROWS_WITH_AS(trace_flex(fan, rho, pin, {}),
                         doctest::Contains("dimension 2"), Error);
}

TEST_CASE("hinge trace sweeps the dihedral monotonically") {
    // Short trace: the unsigned angle would fold back after crossing pi.
    const Skeleton hinge = fixtures::hinge_skeleton();
    const Realization rho = fixtures::hinge_realization();
    const PinnedFrame pin = PinnedFrame::from_realization(rho, "a", "b", "c");
    TraceOptions opts;
    opts.max_samples = 25;
    const SampledFlex flex = trace_flex(hinge, rho, pin, opts);
    REQUIRE(flex.size() == 25);
    std::vector<double> angles;
    for (const Realization& sample : flex.samples) {
        angles.push_back(dihedral_angle(sample, Edge("a", "b"), "c", "d"));
    }
    const bool increasing = std::is_sorted(angles.begin(), angles.end());
    const bool decreasing = std::is_sorted(angles.rbegin(), angles.rend());
    CHECK((increasing || decreasing));
    CHECK(std::abs(angles.back() - angles.front()) > 1e-3);
}

TEST_CASE("edge classification on the hinge") {
    const Skeleton hinge = fixtures::hinge_skeleton();
    const Realization rho = fixtures::hinge_realization();
    const PinnedFrame pin = PinnedFrame::from_realization(rho, "a", "b", "c");
    TraceOptions opts;
    opts.max_samples = 25;
    const SampledFlex flex = trace_flex(hinge, rho, pin, opts);
    const EdgeClassification cls = classify_edges(TriangularSkeleton(hinge), flex);
    CHECK(cls.e_moving == std::set<Edge>{Edge("a", "b")});
    // Boundary edges are constant by convention.
    CHECK(cls.e_const.size() == 4);
    CHECK(cls.e_const.count(Edge("a", "c")) == 1);

    SUBCASE("classification refuses single-sample flexes") {
        SampledFlex stub;
        stub.t = {0.0};
        stub.samples = {rho};
        CHECK_THROWS_AS(classify_edges(TriangularSkeleton(hinge), stub), Error);
    }
}

TEST_CASE("bricard classification marks every edge moving") {
    TraceOptions opts;
    opts.max_samples = 60;
    const SampledFlex flex = trace_flex(fixtures::bricard_skeleton(),
                                        fixtures::bricard_realization(), bricard_pin(),
                                        opts);
    const EdgeClassification cls =
        classify_edges(TriangularSkeleton(fixtures::bricard_skeleton()), flex);
    CHECK(cls.e_moving.size() == 12);
    CHECK(cls.e_const.empty());
}

TEST_CASE("profile classification on a folding quad hinge") {
    // Two rigid quads sharing an edge; the second sample folds one of them
    // about the shared edge. The shared edge must classify as moving, the
    // boundary edges as constant by convention.
    Skeleton quads({"a", "b", "c", "d", "e", "f"},
                   {{"a", "b", "c", "d"}, {"b", "a", "e", "f"}});
    Realization flat{{"a", Vec3(0, 0, 0)}, {"b", Vec3(1, 0, 0)},
                     {"c", Vec3(1, 1, 0)}, {"d", Vec3(0, 1, 0)},
                     {"e", Vec3(0, -1, 0)}, {"f", Vec3(1, -1, 0)}};
    Realization folded = flat;
    const double angle = 0.8;
    for (const Vertex v : {"e", "f"}) {
        const Vec3 p = flat.at(v);
        folded[v] = Vec3(p.x(), p.y() * std::cos(angle), -p.y() * std::sin(angle));
    }
    SampledFlex flex;
    flex.t = {0.0, 0.5};
    flex.samples = {flat, folded};

    const EdgeClassification cls = classify_edges_profile(quads, flex, 1e-7);
    CHECK(cls.e_moving == std::set<Edge>{Edge("a", "b")});
    CHECK(cls.e_const.size() == 6);
    CHECK(cls.variation.at(Edge("a", "b")) > 0.01);

    // The fold preserves each face's shape, so the flex validates.
    CHECK(validate_flex(quads, flex).ok());
}

TEST_CASE("constant distance pairs") {
    const Skeleton hinge = fixtures::hinge_skeleton();
    const Realization rho = fixtures::hinge_realization();
    const PinnedFrame pin = PinnedFrame::from_realization(rho, "a", "b", "c");
    TraceOptions opts;
    opts.max_samples = 25;
    const SampledFlex flex = trace_flex(hinge, rho, pin, opts);
    const std::set<Edge> constant = constant_distance_pairs(hinge.vertices(), flex);
    // Every edge pair is preserved by the flex...
    for (const Edge& e : hinge.edges()) CHECK(constant.count(e) == 1);
    // ... but the hinge's opposite pair sweeps.
    CHECK(constant.count(Edge("c", "d")) == 0);
}

TEST_CASE("bricard keeps the pinned triangle pairs constant") {
    TraceOptions opts;
    opts.max_samples = 40;
    const SampledFlex flex = trace_flex(fixtures::bricard_skeleton(),
                                        fixtures::bricard_realization(), bricard_pin(),
                                        opts);
    const Skeleton bricard = fixtures::bricard_skeleton();
    const std::set<Edge> constant = constant_distance_pairs(bricard.vertices(), flex);
    CHECK(constant.count(Edge("A", "B")) == 1);
    CHECK(constant.count(Edge("A", "N")) == 1);
    CHECK(constant.count(Edge("B", "N")) == 1);
}

TEST_CASE("moving edges are exactly those with a swept opposite pair") {
    // Cross-module consistency: an edge is moving iff the pair of its two
    // opposite vertices is absent from the constant-distance pairs.
    for (int fixture = 0; fixture < 2; ++fixture) {
        const Skeleton g =
            fixture == 0 ? fixtures::hinge_skeleton() : fixtures::bricard_skeleton();
        const Realization rho = fixture == 0 ? fixtures::hinge_realization()
                                             : fixtures::bricard_realization();
        const PinnedFrame pin =
            fixture == 0 ? PinnedFrame::from_realization(rho, "a", "b", "c")
                         : PinnedFrame::from_realization(rho, "A", "B", "N");
        TraceOptions opts;
        opts.max_samples = 25;
        const SampledFlex flex = trace_flex(g, rho, pin, opts);
        const TriangularSkeleton t(g);
        const EdgeClassification cls = classify_edges(t, flex);
        const std::set<Edge> constant = constant_distance_pairs(g.vertices(), flex);
        for (const Edge& e : g.edges()) {
            auto opp = t.opposite_vertices(e);
            std::sort(opp.begin(), opp.end(), vertex_less);
            opp.erase(std::unique(opp.begin(), opp.end()), opp.end());
            if (opp.size() != 2) continue;
            const bool moving = cls.e_moving.count(e) > 0;
            CHECK(moving == (constant.count(Edge(opp[0], opp[1])) == 0));
        }
    }
}

TEST_CASE("jacobian matches central finite differences") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> unit(-2.0, 2.0);
    const Skeleton oct = fixtures::octahedron_skeleton();
    for (int trial = 0; trial < 25; ++trial) {
        Realization rho;
        for (const Vertex& v : oct.vertices()) {
            rho[v] = Vec3(unit(rng), unit(rng), unit(rng));
        }
        PinnedFrame pin;
        try {
            pin = PinnedFrame::from_realization(rho, "px", "py", "pz");
        } catch (const Error&) {
            continue;  // degenerate random pin; resample
        }
        ConstraintSystem sys(oct, rho, pin);
        const Eigen::VectorXd x = sys.pack(rho);
        const Eigen::MatrixXd jac = sys.jacobian(x);

        Eigen::VectorXd direction(x.size());
        for (Eigen::Index i = 0; i < direction.size(); ++i) direction(i) = unit(rng);
        direction.normalize();

        const double h = 1e-6;
        const Eigen::VectorXd fd =
            (sys.residual(x + h * direction) - sys.residual(x - h * direction)) /
            (2 * h);
        const Eigen::VectorXd analytic = jac * direction;
        const double scale = std::max(1.0, analytic.norm());
        CHECK((fd - analytic).norm() / scale < 1e-6);
    }
}

TEST_CASE("tracing is equivariant under direct isometries") {
    std::mt19937 rng(64);
    TraceOptions opts;
    opts.max_samples = 30;

    const Skeleton g = fixtures::bricard_skeleton();
    const Realization rho = fixtures::bricard_realization();
    const SampledFlex base = trace_flex(g, rho, bricard_pin(), opts);

    const Realization moved = fixtures::apply_isometry(rho, rng, true);
    const SampledFlex shifted =
        trace_flex(g, moved, PinnedFrame::from_realization(moved, "A", "B", "N"), opts);

    REQUIRE(base.size() == shifted.size());
    const auto& vertices = g.vertices();
    for (std::size_t s = 0; s < base.size(); ++s) {
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            for (std::size_t j = i + 1; j < vertices.size(); ++j) {
                const double a = (position(base.samples[s], vertices[i]) -
                                  position(base.samples[s], vertices[j]))
                                     .norm();
                const double b = (position(shifted.samples[s], vertices[i]) -
                                  position(shifted.samples[s], vertices[j]))
                                     .norm();
                CHECK(std::abs(a - b) < 1e-8);
            }
        }
    }
}

TEST_CASE("flex validation flags drift and stalls") {
    const Skeleton hinge = fixtures::hinge_skeleton();
    const Realization rho = fixtures::hinge_realization();

    SampledFlex flex;
    flex.t = {0.0, 0.5};
    flex.samples = {rho, rho};
    SUBCASE("congruent consecutive samples are reported") {
        const ValidationReport report = validate_flex(hinge, flex);
        CHECK(!report.ok());
        CHECK(report.violations.front().code == "congruent_samples");
    }
    SUBCASE("length drift is reported") {
        flex.samples[1]["c"] = Vec3(0.5, 2.0, 0.0);
        const ValidationReport report = validate_flex(hinge, flex);
        bool drift = false;
        for (const Violation& v : report.violations) drift |= v.code == "length_drift";
        CHECK(drift);
    }
    SUBCASE("parameter monotonicity is enforced") {
        flex.t = {0.0, 0.0};
        flex.samples[1]["d"] = Vec3(0.5, 0.8, 0.3);
        const ValidationReport report = validate_flex(hinge, flex);
        bool order = false;
        for (const Violation& v : report.violations) order |= v.code == "flex_t_order";
        CHECK(order);
    }
}
