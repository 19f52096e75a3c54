#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "flexcycle/skeleton.hpp"

using namespace flexcycle;

TEST_CASE("vertex ordering is numeric-aware") {
    CHECK(vertex_less("2", "10"));
    CHECK(!vertex_less("10", "2"));
    CHECK(vertex_less("a", "b"));
    CHECK(vertex_less("7", "a"));  // numeric ids sort first
    CHECK(!vertex_less("x", "x"));
}

TEST_CASE("edges are canonically ordered pairs") {
    Edge e("py", "px");
    CHECK(e.a == "px");
    CHECK(e.b == "py");
    CHECK(e == Edge("px", "py"));
    CHECK(e.other("px") == "py");
}

TEST_CASE("octahedron validates cleanly") {
    const Skeleton oct = fixtures::octahedron_skeleton();
    CHECK(oct.vertices().size() == 6);
    CHECK(oct.edges().size() == 12);
    CHECK(oct.faces().size() == 8);
    CHECK(validate_skeleton(oct).ok());
    CHECK(oct.is_triangular());
}

TEST_CASE("removing a face breaks the two-face invariant on 3 edges") {
    Skeleton oct = fixtures::octahedron_skeleton();
    std::vector<Face> faces(oct.faces().begin(), oct.faces().end() - 1);
    Skeleton damaged(oct.vertices(), faces);
    const ValidationReport report = validate_skeleton(damaged);
    std::size_t count = 0;
    for (const Violation& v : report.violations) {
        if (v.code == "edge_face_count") ++count;
    }
    CHECK(count == 3);
}

TEST_CASE("a doubly-covered triangle is a legal 2-skeleton") {
    Skeleton doubled({"a", "b", "c"}, {{"a", "b", "c"}, {"a", "b", "c"}});
    CHECK(validate_skeleton(doubled).ok());
    // ... but not a usable triangular skeleton at any edge: the opposite
    // vertices coincide.
    TriangularSkeleton t(doubled);
    CHECK_THROWS_AS(t.two_opposites(Edge("a", "b")), Error);
}

TEST_CASE("validator reports structural defects") {
    Skeleton bad({"a", "b", "c", "d"},
                 {{"a", "b"}, {"a", "b", "a"}, {"a", "b", "x"}});
    const ValidationReport report = validate_skeleton(bad);
    auto has = [&](const std::string& code) {
        return std::any_of(report.violations.begin(), report.violations.end(),
                           [&](const Violation& v) { return v.code == code; });
    };
    CHECK(has("face_too_short"));
    CHECK(has("repeated_face_vertex"));
    CHECK(has("unknown_vertex"));
}

TEST_CASE("fan triangulation of the cube") {
    const Skeleton cube = fixtures::cube_skeleton();
    const FanTriangulation fan = triangulate_fan(cube);
    CHECK(fan.skeleton.faces().size() == 12);
    CHECK(fan.diagonals.size() == 6);
    CHECK(validate_skeleton(fan.skeleton.skeleton()).ok());
    CHECK(fan.skeleton.vertices() == cube.vertices());
    // Each diagonal's endpoints lie in a common face of the input.
    for (const Edge& d : fan.diagonals) {
        bool found = false;
        for (const Face& f : cube.faces()) {
            const bool has_a = std::find(f.begin(), f.end(), d.a) != f.end();
            const bool has_b = std::find(f.begin(), f.end(), d.b) != f.end();
            found |= has_a && has_b;
        }
        CHECK(found);
    }
}

TEST_CASE("fan triangulation is the identity on triangular skeletons") {
    const Skeleton oct = fixtures::octahedron_skeleton();
    const FanTriangulation fan = triangulate_fan(oct);
    CHECK(fan.diagonals.empty());
    CHECK(same_skeleton(fan.skeleton.skeleton(), oct));
    // Idempotence.
    const FanTriangulation again = triangulate_fan(fan.skeleton.skeleton());
    CHECK(same_skeleton(again.skeleton.skeleton(), fan.skeleton.skeleton()));
}

TEST_CASE("fan on a pentagonal pyramid face") {
    // Pentagon base plus an apex: one 5-gon among triangles.
    Skeleton pyramid({"a0", "a1", "a2", "a3", "a4", "top"},
                     {{"a0", "a1", "a2", "a3", "a4"},
                      {"a0", "a1", "top"},
                      {"a1", "a2", "top"},
                      {"a2", "a3", "top"},
                      {"a3", "a4", "top"},
                      {"a4", "a0", "top"}});
    REQUIRE(validate_skeleton(pyramid).ok());
    const FanTriangulation fan = triangulate_fan(pyramid);
    CHECK(fan.skeleton.faces().size() == 3 + 5);
    CHECK(fan.diagonals.size() == 2);

    // |faces| = sum_f (len - 2), |diagonals| = sum_f (len - 3).
    std::size_t expected_faces = 0, expected_diagonals = 0;
    for (const Face& f : pyramid.faces()) {
        expected_faces += f.size() - 2;
        expected_diagonals += f.size() - 3;
    }
    CHECK(fan.skeleton.faces().size() == expected_faces);
    CHECK(fan.diagonals.size() == expected_diagonals);
}

TEST_CASE("fan anchor is configurable") {
    const Skeleton cube = fixtures::cube_skeleton();
    const auto max_anchor = [](const Face& f) {
        return *std::max_element(f.begin(), f.end(), vertex_less);
    };
    const FanTriangulation fan = triangulate_fan(cube, max_anchor);
    CHECK(fan.diagonals.size() == 6);
    CHECK(fan.diagonals != triangulate_fan(cube).diagonals);
}

TEST_CASE("canonical faces identify rotations and reversals") {
    CHECK(canonical_face({"c", "a", "b"}) == canonical_face({"a", "b", "c"}));
    CHECK(canonical_face({"c", "b", "a"}) == canonical_face({"a", "b", "c"}));
    CHECK(canonical_face({"b", "a", "d", "c"}) == canonical_face({"a", "b", "c", "d"}));
    CHECK(canonical_face({"a", "c", "b", "d"}) != canonical_face({"a", "b", "c", "d"}));
}

TEST_CASE("two_opposites and DistinguishedEdge") {
    TriangularSkeleton oct(fixtures::octahedron_skeleton());
    auto [o1, o2] = oct.two_opposites(Edge("px", "py"));
    CHECK(Edge(o1, o2) == Edge("pz", "mz"));

    const DistinguishedEdge de =
        DistinguishedEdge::make(oct, Edge("px", "py"), "mz", "pz");
    CHECK(de.south == "mz");
    CHECK(de.north == "pz");
    CHECK_THROWS_AS(DistinguishedEdge::make(oct, Edge("px", "py"), "mx", "pz"), Error);
    CHECK_THROWS_AS(oct.two_opposites(Edge("px", "mx")), Error);  // not an edge
}

TEST_CASE("non-triangular faces are rejected by TriangularSkeleton") {
    CHECK_THROWS_AS(TriangularSkeleton(fixtures::cube_skeleton()), Error);
}
