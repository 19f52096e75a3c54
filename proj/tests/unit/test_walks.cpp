#include <doctest.h>

#include <algorithm>
#include <random>

#include "fixtures.hpp"
#include "flexcycle/walks.hpp"

using namespace flexcycle;

namespace {

const Complex I(0.0, 1.0);

VertexColoring octahedron_all_red_but_mz() {
    VertexColoring coloring;
    coloring.s = "mz";
    const Skeleton oct = fixtures::octahedron_skeleton();
    for (const Vertex& v : oct.vertices()) {
        coloring.colors[v] = v == "mz" ? Color::Blue : Color::Red;
    }
    return coloring;
}

// Point on the chart of p with companion coordinate beta (see projective tests).
ProjectivePoint chart_point(const FinChart& chart, const Complex& alpha,
                            const Complex& beta) {
    const CVec3& dir = chart.direction();
    const CVec3& u = chart.companion();
    const std::array<CVec3, 3> axes = {CVec3{Complex(1), Complex(0), Complex(0)},
                                       CVec3{Complex(0), Complex(1), Complex(0)},
                                       CVec3{Complex(0), Complex(0), Complex(1)}};
    std::size_t pick = 0;
    for (std::size_t i = 1; i < 3; ++i) {
        if (std::abs(dot(dir, axes[i])) > std::abs(dot(dir, axes[pick]))) pick = i;
    }
    const CVec3& c = axes[pick];
    const Complex gamma = 0.5 * chart.base_r() / dot(dir, c);
    CVec3 q;
    for (int i = 0; i < 3; ++i) q[i] = gamma * c[i] + alpha * dir[i] + beta * u[i];
    return embed_point(q);
}

}  // namespace

TEST_CASE("coloring from a point assignment") {
    const ProjectivePoint s_point{{Complex(1), I, Complex(0), Complex(7), Complex(0)}};
    std::map<Vertex, ProjectivePoint> rho_inf;
    rho_inf["s"] = s_point;
    rho_inf["r"] = embed_point(1, 2, 3);
    rho_inf["b"] = ProjectivePoint{{Complex(2), 2.0 * I, Complex(0), Complex(9), Complex(0)}};
    rho_inf["g"] = ProjectivePoint{{Complex(0), Complex(1), I, Complex(4), Complex(0)}};

    const VertexColoring coloring = color_vertices(rho_inf, "s");
    CHECK(coloring.at("s") == Color::Blue);
    CHECK(coloring.at("r") == Color::Red);
    CHECK(coloring.at("b") == Color::Blue);  // xyz projectively equal to s
    CHECK(coloring.at("g") == Color::Gold);  // different infinite direction

    SUBCASE("s must be at infinity") {
        rho_inf["s"] = embed_point(0, 0, 0);
        CHECK_THROWS_WITH_AS(color_vertices(rho_inf, "s"),
                             doctest::Contains("not at infinity"), Error);
    }
    SUBCASE("points off the quadric are rejected") {
        rho_inf["r"] = ProjectivePoint{{Complex(1), Complex(0), Complex(0), Complex(0),
                                        Complex(1)}};
        CHECK_THROWS_WITH_AS(color_vertices(rho_inf, "s"),
                             doctest::Contains("off the quadric"), Error);
    }
    SUBCASE("the exceptional point cannot be s") {
        rho_inf["s"] = ProjectivePoint{{Complex(0), Complex(0), Complex(0), Complex(1),
                                        Complex(0)}};
        CHECK_THROWS_WITH_AS(color_vertices(rho_inf, "s"),
                             doctest::Contains("exceptional"), Error);
    }
}

TEST_CASE("red and blue walks on the hand-colored octahedron") {
    TriangularSkeleton oct(fixtures::octahedron_skeleton());
    const VertexColoring coloring = octahedron_all_red_but_mz();
    const WalkPair walk = red_blue_walks(oct, coloring, Edge("px", "mz"));

    CHECK(walk.red_vertices == std::set<Vertex>{"px", "py", "mx", "my"});
    CHECK(walk.red_edges == std::set<Edge>{Edge("px", "py"), Edge("py", "mx"),
                                           Edge("mx", "my"), Edge("my", "px")});
    CHECK(walk.blue_vertices == std::set<Vertex>{"mz"});
    CHECK(walk.blue_edges.empty());
    // The distinguished edge {w1,w2} lies in the red walk.
    CHECK(walk.red_edges.count(Edge("px", "py")) == 1);

    SUBCASE("a non red-blue seed is rejected") {
        CHECK_THROWS_WITH_AS(red_blue_walks(oct, coloring, Edge("px", "py")),
                             doctest::Contains("not red-blue"), Error);
    }
}

TEST_CASE("a gold vertex interrupts the star and shrinks the red walk") {
    TriangularSkeleton oct(fixtures::octahedron_skeleton());
    VertexColoring coloring = octahedron_all_red_but_mz();
    coloring.colors["py"] = Color::Gold;
    const WalkPair walk = red_blue_walks(oct, coloring, Edge("px", "mz"));
    CHECK(walk.red_vertices == std::set<Vertex>{"px", "mx", "my"});
    CHECK(walk.red_edges == std::set<Edge>{Edge("px", "my"), Edge("mx", "my")});
}

TEST_CASE("blue walk grows through triangles with one red vertex") {
    TriangularSkeleton oct(fixtures::octahedron_skeleton());
    VertexColoring coloring = octahedron_all_red_but_mz();
    coloring.colors["my"] = Color::Blue;
    const WalkPair walk = red_blue_walks(oct, coloring, Edge("px", "mz"));
    CHECK(walk.blue_vertices == std::set<Vertex>{"mz", "my"});
    // The blue vertices stay connected through the class triangles.
    CHECK(walk.blue_edges == std::set<Edge>{Edge("mz", "my")});
    // The second blue vertex pulls its red neighbors (including a pole) in.
    CHECK(walk.red_vertices == std::set<Vertex>{"px", "py", "mx", "pz"});
    CHECK(walk.red_edges.count(Edge("px", "pz")) == 1);
}

TEST_CASE("walk construction is independent of face order") {
    const Skeleton oct = fixtures::octahedron_skeleton();
    const VertexColoring coloring = octahedron_all_red_but_mz();
    std::vector<Face> faces = oct.faces();
    std::mt19937 rng(8);
    const WalkPair reference =
        red_blue_walks(TriangularSkeleton(oct), coloring, Edge("px", "mz"));
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(faces.begin(), faces.end(), rng);
        const WalkPair shuffled = red_blue_walks(
            TriangularSkeleton(Skeleton(oct.vertices(), faces)), coloring,
            Edge("px", "mz"));
        CHECK(shuffled.red_edges == reference.red_edges);
        CHECK(shuffled.blue_edges == reference.blue_edges);
        CHECK(shuffled.class_edges == reference.class_edges);
    }
}

TEST_CASE("cycle extraction inside the red walk") {
    SUBCASE("a 4-cycle returns itself") {
        TriangularSkeleton oct(fixtures::octahedron_skeleton());
        const WalkPair walk =
            red_blue_walks(oct, octahedron_all_red_but_mz(), Edge("px", "mz"));
        const std::vector<Vertex> cycle = cycle_in_red_walk(walk, Edge("px", "py"));
        CHECK(cycle == std::vector<Vertex>{"px", "py", "mx", "my"});
    }
    SUBCASE("theta graphs give the shortest cycle, ties lexicographic") {
        WalkPair theta;
        theta.red_edges = {Edge("a", "b"), Edge("a", "c"), Edge("c", "b"),
                           Edge("a", "d"), Edge("d", "e"), Edge("e", "b")};
        const std::vector<Vertex> cycle = cycle_in_red_walk(theta, Edge("a", "b"));
        CHECK(cycle == std::vector<Vertex>{"a", "b", "c"});
    }
    SUBCASE("acyclic walks are an error") {
        WalkPair path;
        path.red_edges = {Edge("a", "b"), Edge("b", "c")};
        CHECK_THROWS_WITH_AS(cycle_in_red_walk(path, Edge("a", "b")),
                             doctest::Contains("acyclic"), Error);
    }
}

TEST_CASE("red_achievable with no constant edges is the red walk") {
    TriangularSkeleton oct(fixtures::octahedron_skeleton());
    VertexColoring coloring = octahedron_all_red_but_mz();
    coloring.seed = Edge("px", "mz");
    const RedAchievableResult result = red_achievable(oct, coloring, {});
    CHECK(result.achievable == std::set<Vertex>{"px", "py", "mx", "my"});
    CHECK(!result.truncated);
    CHECK(result.states_explored == 1);
    for (const auto& [v, flips] : result.witnesses) CHECK(flips.empty());

    SUBCASE("a missing seed is an error") {
        VertexColoring no_seed = octahedron_all_red_but_mz();
        CHECK_THROWS_AS(red_achievable(oct, no_seed, {}), Error);
    }
}

TEST_CASE("state cap flags truncation") {
    TriangularSkeleton oct(fixtures::octahedron_skeleton());
    VertexColoring coloring = octahedron_all_red_but_mz();
    coloring.seed = Edge("px", "mz");
    // Equator edges are flippable (their opposites pz, mz are non-adjacent).
    const RedAchievableResult result =
        red_achievable(oct, coloring, {Edge("px", "py")}, 1);
    CHECK(result.achievable == std::set<Vertex>{"px", "py", "mx", "my"});
    CHECK(result.truncated);
}

TEST_CASE("flips on the triangulated cube extend the achievable set") {
    const FanTriangulation fan = triangulate_fan(fixtures::cube_skeleton());
    VertexColoring coloring;
    coloring.s = "v0";
    for (const Vertex& v : fan.skeleton.vertices()) coloring.colors[v] = Color::Red;
    coloring.colors["v0"] = Color::Blue;
    coloring.colors["v2"] = Color::Gold;
    coloring.colors["v4"] = Color::Gold;
    coloring.seed = Edge("v0", "v1");

    // Without flips the gold vertices cut the star of v0 into two arcs.
    const WalkPair base = red_blue_walks(fan.skeleton, coloring, Edge("v0", "v1"));
    CHECK(base.red_vertices == std::set<Vertex>{"v1", "v5"});

    const RedAchievableResult result =
        red_achievable(fan.skeleton, coloring, fan.diagonals);
    CHECK(!result.truncated);
    CHECK(result.achievable.size() > base.red_vertices.size());
    CHECK(result.achievable.count("v3") == 1);
    // Replaying the witness sequence puts the vertex in that state's red walk.
    const std::vector<Edge>& witness = result.witnesses.at("v3");
    CHECK(!witness.empty());
    const TriangularSkeleton replayed = flip_sequence(fan.skeleton, witness);
    const WalkPair walk = red_blue_walks(replayed, coloring, Edge("v0", "v1"));
    CHECK(walk.red_vertices.count("v3") == 1);
}

TEST_CASE("red_const_edge check") {
    TriangularSkeleton oct(fixtures::octahedron_skeleton());
    SUBCASE("passes when no opposite vertex is achievable") {
        const RedConstEdgeReport r = check_red_const_edge(
            oct, Edge("px", "py"), {"px", "py", "mx", "my"});
        CHECK(r.applicable);
        CHECK(r.pass);
    }
    SUBCASE("fails when an opposite vertex is achievable, naming the triangle") {
        const RedConstEdgeReport r = check_red_const_edge(
            oct, Edge("px", "py"), {"px", "py", "pz"});
        CHECK(r.applicable);
        CHECK(!r.pass);
        CHECK(r.detail.find("pz") != std::string::npos);
    }
    SUBCASE("vacuous pass when an endpoint is not achievable") {
        const RedConstEdgeReport r = check_red_const_edge(oct, Edge("px", "py"), {"px"});
        CHECK(!r.applicable);
        CHECK(r.pass);
    }
}

TEST_CASE("achievable vertices of a chart-built assignment lie on the chart") {
    // Synthetic rho_infinity: s at infinity, every red vertex on the chart of
    // rho_infinity(s); the achievable set must pass chart membership.
    TriangularSkeleton oct(fixtures::octahedron_skeleton());
    const ProjectivePoint p{{Complex(1), I, Complex(0), Complex(3), Complex(0)}};
    const FinChart chart = FinChart::make(p);

    std::map<Vertex, ProjectivePoint> rho_inf;
    rho_inf["mz"] = p;
    double beta = 0.3;
    for (const Vertex& v : {"px", "py", "mx", "my", "pz"}) {
        rho_inf[v] = chart_point(chart, Complex(0.1 * beta, 0.2), Complex(beta));
        beta += 0.7;
    }
    VertexColoring coloring = color_vertices(rho_inf, "mz");
    CHECK(coloring.at("px") == Color::Red);
    coloring.seed = Edge("px", "mz");

    const RedAchievableResult result = red_achievable(oct, coloring, {});
    CHECK(!result.achievable.empty());
    for (const Vertex& v : result.achievable) {
        CHECK(chart.contains(rho_inf.at(v), 1e-8));
    }
}
