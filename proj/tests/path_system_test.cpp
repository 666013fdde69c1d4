#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fixtures.hpp"
#include "planarsplit/families.hpp"
#include "planarsplit/graph.hpp"
#include "planarsplit/path_system.hpp"

using namespace planarsplit;
using test_fixtures::c6_rotation;
using test_fixtures::fourteener;
using test_fixtures::octahedron_edges;
using test_fixtures::subdivided_octahedron;

namespace {

struct Thrown {
  Error::Code code;
  std::string tag;
};

std::optional<Thrown> thrown(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return Thrown{e.code(), e.tag()};
  }
  return std::nullopt;
}

PlanarGraph star(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i});
  return PlanarGraph::from_edges(edges);
}

PlanarGraph k4() {
  return PlanarGraph::from_edges({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

}  // namespace

TEST_CASE("facial path accessors and canonical ordering") {
  FacialPath p{2, {4, 7, 9}};
  CHECK(p.length() == 2);
  CHECK(p.out_endvertex() == 4);
  CHECK(p.in_endvertex() == 9);
  CHECK(p.has_edge(4, 7));
  CHECK(p.has_edge(7, 4));
  CHECK(p.has_edge(9, 7));
  CHECK(!p.has_edge(4, 9));
  CHECK(!p.has_edge(4, 5));

  CHECK(FacialPath{0, {8, 9}} < FacialPath{1, {0, 1}});  // face decides first
  CHECK(FacialPath{1, {0, 1}} < FacialPath{1, {0, 2}});
  CHECK(FacialPath{1, {0, 1}} == FacialPath{1, {0, 1}});
  CHECK(FacialPath{1, {0, 1}} != FacialPath{1, {1, 0}});
}

TEST_CASE("system deduplicates and keeps canonical order") {
  FacialPath a{0, {1, 2, 3, 4}};
  FacialPath b{1, {5, 3}};
  FacialPath c{2, {1, 6}};

  PathSystem x;
  CHECK(x.empty());
  CHECK(x.add(c));
  CHECK(x.add(a));
  CHECK(x.add(b));
  CHECK(!x.add(a));
  CHECK(x.size() == 3);
  CHECK(x.paths() == std::vector<FacialPath>{a, b, c});
  CHECK(x.contains(b));
  CHECK(!x.contains(FacialPath{1, {3, 5}}));

  PathSystem y;
  y.add(a);
  y.add(b);
  y.add(c);
  CHECK(x == y);

  auto bad_short = thrown([&] { x.add(FacialPath{0, {5}}); });
  REQUIRE(bad_short.has_value());
  CHECK(bad_short->code == Error::Code::kBadParameter);
  auto bad_repeat = thrown([&] { x.add(FacialPath{0, {5, 6, 5}}); });
  REQUIRE(bad_repeat.has_value());
  CHECK(bad_repeat->code == Error::Code::kBadParameter);
}

TEST_CASE("degree counts, coverage and vertex queries") {
  PathSystem x;
  x.add(FacialPath{0, {1, 2, 3, 4}});  // index 0
  x.add(FacialPath{1, {5, 3}});        // index 1
  x.add(FacialPath{2, {1, 6}});        // index 2

  CHECK(x.outdegree(1) == 2);
  CHECK(x.outdegree(5) == 1);
  CHECK(x.outdegree(4) == 0);
  CHECK(x.indegree(4) == 1);
  CHECK(x.indegree(3) == 1);
  CHECK(x.indegree(1) == 0);

  CHECK(x.is_inner(2));
  CHECK(x.is_inner(3));
  CHECK(!x.is_inner(1));
  CHECK(x.is_endvertex(3));
  CHECK(x.is_endvertex(1));
  CHECK(!x.is_endvertex(2));

  CHECK(x.vertices() == std::vector<int>{1, 2, 3, 4, 5, 6});

  CHECK(x.edge_multiplicity(2, 3) == 1);
  CHECK(x.edge_multiplicity(3, 2) == 1);
  CHECK(x.edge_multiplicity(4, 5) == 0);
  CHECK(x.covers_edge(5, 3));
  CHECK(!x.covers_edge(1, 3));

  CHECK(x.paths_covering(2, 1) == std::vector<int>{0});
  CHECK(x.paths_covering(7, 8).empty());
  CHECK(x.paths_into(3) == std::vector<int>{1});
  CHECK(x.paths_out_of(1) == std::vector<int>{0, 2});
}

TEST_CASE("occupied looks at end edges only") {
  PathSystem x;
  FacialPath a{0, {1, 2, 3, 4}};
  x.add(a);

  CHECK(x.occupied(a));  // own edges count
  CHECK(x.occupied(FacialPath{5, {9, 1, 2}}));   // last edge on a
  CHECK(x.occupied(FacialPath{5, {2, 1, 9}}));   // first edge on a
  CHECK(!x.occupied(FacialPath{5, {0, 2, 3, 9}}));  // only a middle edge shared
  CHECK(!x.occupied(FacialPath{5, {7, 8}}));
}

TEST_CASE("reaches, acyclicity and forward closure") {
  PathSystem x;
  x.add(FacialPath{0, {1, 2}});
  x.add(FacialPath{1, {2, 3}});
  x.add(FacialPath{2, {3, 4}});

  CHECK(x.reaches(1, 2));
  CHECK(x.reaches(1, 4));
  CHECK(x.reaches(2, 4));
  CHECK(!x.reaches(4, 1));
  CHECK(!x.reaches(1, 1));
  CHECK(!x.reaches(2, 2));
  CHECK(x.is_acyclic());

  PathSystem fc2 = x.forward_closure(2);
  CHECK(fc2.paths() ==
        std::vector<FacialPath>{FacialPath{1, {2, 3}}, FacialPath{2, {3, 4}}});
  CHECK(x.forward_closure(4).empty());
  CHECK(x.forward_closure(1) == x);

  x.add(FacialPath{3, {4, 1}});  // closes the loop
  CHECK(x.reaches(1, 1));
  CHECK(!x.is_acyclic());
}

TEST_CASE("dump prints one canonical line per path") {
  PathSystem x;
  CHECK(x.dump() == "");
  x.add(FacialPath{3, {7, 2}});
  x.add(FacialPath{1, {4, 5, 6}});
  CHECK(x.dump() == "face:1 out:4 5 in:6\nface:3 out:7 in:2\n");
}

TEST_CASE("structure violations are reported with witnesses") {
  PlanarGraph g = c6_rotation();
  int f01 = g.face_of_directed(0, 1);
  int f10 = g.face_of_directed(1, 0);
  REQUIRE(f01 != f10);

  SUBCASE("unknown vertex") {
    PathSystem x;
    x.add(FacialPath{f01, {0, 99}});
    NiceReport r = check_nice(g, x);
    CHECK(!r.ok);
    CHECK(r.failed_condition == "structure");
    CHECK(r.witness_vertex == 99);
  }

  SUBCASE("wrong face id") {
    PathSystem x;
    x.add(FacialPath{f10, {0, 1}});
    NiceReport r = check_nice(g, x);
    CHECK(!r.ok);
    CHECK(r.failed_condition == "structure");
    CHECK(r.witness_edge == std::pair<int, int>{0, 1});
  }

  SUBCASE("non-adjacent consecutive vertices") {
    PathSystem x;
    x.add(FacialPath{f01, {0, 2}});
    NiceReport r = check_nice(g, x);
    CHECK(!r.ok);
    CHECK(r.failed_condition == "structure");
  }

  SUBCASE("inner vertex of wrong degree") {
    // On the 6-cycle every vertex has degree 2, so any two-edge arc has a
    // bad inner vertex even though it follows a face walk.
    int next = g.pred_neighbor(1, 0);  // walk 0 -> 1 continues here
    PathSystem x;
    x.add(FacialPath{f01, {0, 1, next}});
    NiceReport r = check_nice(g, x);
    CHECK(!r.ok);
    CHECK(r.failed_condition == "structure");
    CHECK(r.witness_vertex == 1);
  }

  SUBCASE("endpoint of one path inner on another") {
    // K4 plus a pendant: 1 keeps degree 3, so a two-edge arc through 1 is
    // structurally fine until a second path ends there.
    PlanarGraph h = PlanarGraph::from_edges(
        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}});
    int y = h.pred_neighbor(1, 0);
    PathSystem x;
    x.add(FacialPath{h.face_of_directed(0, 1), {0, 1, y}});
    CHECK(check_nice(h, x).failed_condition != "structure");
    x.add(FacialPath{h.face_of_directed(1, 0), {1, 0}});
    NiceReport r = check_nice(h, x);
    CHECK(!r.ok);
    CHECK(r.failed_condition == "structure");
    CHECK(r.witness_vertex == 1);
  }
}

TEST_CASE("degree conditions report the first failure in order") {
  SUBCASE("D1 shared edge needs degree-3 ends") {
    PlanarGraph g = c6_rotation();
    PathSystem x;
    x.add(FacialPath{g.face_of_directed(0, 1), {0, 1}});
    x.add(FacialPath{g.face_of_directed(1, 0), {1, 0}});
    NiceReport r = check_nice(g, x);
    CHECK(!r.ok);
    CHECK(r.failed_condition == "D1");
    CHECK(r.witness_edge == std::pair<int, int>{0, 1});
  }

  SUBCASE("D2 degree-2 vertex with outgoing path") {
    PlanarGraph g = c6_rotation();
    PathSystem x;
    x.add(FacialPath{g.face_of_directed(1, 0), {1, 0}});
    NiceReport r = check_nice(g, x);
    CHECK(!r.ok);
    CHECK(r.failed_condition == "D2");
    CHECK(r.witness_vertex == 1);
  }

  SUBCASE("D3 degree-3 vertex used as endpoint") {
    PlanarGraph g = k4();
    PathSystem x;
    x.add(FacialPath{g.face_of_directed(0, 1), {0, 1}});
    NiceReport r = check_nice(g, x);
    CHECK(!r.ok);
    CHECK(r.failed_condition == "D3");
    CHECK(r.witness_vertex == 0);
  }

  SUBCASE("D4 degree-4 vertex with incoming paths needs out-degree 3") {
    PlanarGraph g = star(4);
    PathSystem x;
    x.add(FacialPath{0, {1, 0}});
    NiceReport r = check_nice(g, x);
    CHECK(!r.ok);
    CHECK(r.failed_condition == "D4");
    CHECK(r.witness_vertex == 0);

    x.add(FacialPath{0, {0, 2}});
    x.add(FacialPath{0, {0, 3}});
    x.add(FacialPath{0, {0, 4}});
    CHECK(check_nice(g, x).ok);  // out-degree 3 satisfies the condition
  }

  SUBCASE("D5 degree-5 vertex must not receive paths") {
    PlanarGraph g = star(5);
    PathSystem x;
    x.add(FacialPath{0, {1, 0}});
    NiceReport r = check_nice(g, x);
    CHECK(!r.ok);
    CHECK(r.failed_condition == "D5");
    CHECK(r.witness_vertex == 0);
  }
}

TEST_CASE("almost-nice exempts the root") {
  SUBCASE("D2 at the root") {
    PlanarGraph g = c6_rotation();
    PathSystem x;
    x.add(FacialPath{g.face_of_directed(1, 0), {1, 0}});
    CHECK(!check_nice(g, x).ok);
    CHECK(check_almost_nice(g, x, 1).ok);
    CHECK(!check_almost_nice(g, x, 0).ok);  // wrong root does not help
  }

  SUBCASE("D4 and D5 at the root") {
    PlanarGraph g4 = star(4);
    PathSystem x4;
    x4.add(FacialPath{0, {1, 0}});
    CHECK(check_almost_nice(g4, x4, 0).ok);

    PlanarGraph g5 = star(5);
    PathSystem x5;
    x5.add(FacialPath{0, {1, 0}});
    CHECK(check_almost_nice(g5, x5, 0).ok);
  }

  SUBCASE("D1 needs degree 3 only away from the root") {
    // Star with two extra arms on vertex 1: deg(0) = 4, deg(1) = 3. The
    // shared edge {0,1} fails D1 outright but passes with root 0, which
    // pushes the first failure to D3 at vertex 1.
    PlanarGraph g = PlanarGraph::from_edges(
        {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 5}, {1, 6}});
    PathSystem x;
    x.add(FacialPath{0, {0, 1}});
    x.add(FacialPath{0, {1, 0}});
    NiceReport strict = check_nice(g, x);
    CHECK(strict.failed_condition == "D1");
    CHECK(strict.witness_vertex == 0);
    NiceReport relaxed = check_almost_nice(g, x, 0);
    CHECK(!relaxed.ok);
    CHECK(relaxed.failed_condition == "D3");
    CHECK(relaxed.witness_vertex == 1);
  }

  SUBCASE("root must exist") {
    PlanarGraph g = c6_rotation();
    auto bad = thrown([&] { check_almost_nice(g, PathSystem{}, 99); });
    REQUIRE(bad.has_value());
    CHECK(bad->code == Error::Code::kBadParameter);
  }
}

TEST_CASE("build_P rejects graphs outside its input class") {
  SUBCASE("disconnected") {
    PlanarGraph g = PlanarGraph::from_edges(
        {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
    auto t = thrown([&] { build_P(g); });
    REQUIRE(t.has_value());
    CHECK(t->code == Error::Code::kPreconditionViolated);
    CHECK(t->tag == "connected");
  }

  SUBCASE("degree-1 vertex") {
    PlanarGraph g = PlanarGraph::from_edges({{0, 1}, {1, 2}});
    auto t = thrown([&] { build_P(g); });
    REQUIRE(t.has_value());
    CHECK(t->code == Error::Code::kPreconditionViolated);
    CHECK(t->tag == "min_degree");
  }

  SUBCASE("non-simple face at a cut vertex") {
    PlanarGraph g = PlanarGraph::from_edges(
        {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
    auto t = thrown([&] { build_P(g); });
    REQUIRE(t.has_value());
    CHECK(t->code == Error::Code::kPreconditionViolated);
    CHECK(t->tag == "face_simple");
  }

  SUBCASE("face with a chord") {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 6; ++i) edges.push_back({i, (i + 1) % 6});
    edges.push_back({0, 3});
    PlanarGraph g = PlanarGraph::from_edges(edges);
    auto t = thrown([&] { build_P(g); });
    REQUIRE(t.has_value());
    CHECK(t->code == Error::Code::kPreconditionViolated);
    CHECK(t->tag == "face_chordless");
  }

  SUBCASE("face longer than nine") {
    PlanarGraph g = hex_patch(2, 2);
    auto t = thrown([&] { build_P(g); });
    REQUIRE(t.has_value());
    CHECK(t->code == Error::Code::kPreconditionViolated);
    CHECK(t->tag == "face_bound");
  }
}

TEST_CASE("build_P is empty without eligible arcs") {
  // All degree 2: every walk position is a cut but no out-endvertex has
  // degree >= 4. All degree 3: no cuts at all.
  CHECK(build_P(c6_rotation()).empty());
  CHECK(build_P(k4()).empty());
}

TEST_CASE("build_P on the octahedron keeps every dart") {
  PlanarGraph g = PlanarGraph::from_edges(octahedron_edges());
  PathSystem p = build_P(g);
  REQUIRE(p.size() == 24);
  for (const auto& q : p.paths()) CHECK(q.length() == 1);
  for (auto [u, v] : octahedron_edges()) {
    CHECK(p.edge_multiplicity(u, v) == 2);
    auto covering = p.paths_covering(u, v);
    REQUIRE(covering.size() == 2);
    const auto& q0 = p.paths()[static_cast<size_t>(covering[0])];
    const auto& q1 = p.paths()[static_cast<size_t>(covering[1])];
    CHECK(q0.verts == std::vector<int>{q1.verts[1], q1.verts[0]});
  }
  // As a system it is far from nice: shared edges join degree-4 vertices.
  NiceReport r = check_nice(g, p);
  CHECK(!r.ok);
  CHECK(r.failed_condition == "D1");
}

TEST_CASE("build_P retention on the fourteener") {
  PlanarGraph g = fourteener();
  REQUIRE(g.degree(0) == 4);
  PathSystem p = build_P(g);
  // Only the hub can serve as out-endvertex; each of its four faces
  // contributes the arc from the hub to the next cut, which is a degree-2
  // vertex one or two steps along.
  REQUIRE(p.size() == 4);
  std::set<int> faces_used;
  for (const auto& q : p.paths()) {
    CHECK(q.out_endvertex() == 0);
    CHECK(g.degree(q.in_endvertex()) == 2);
    CHECK(q.length() <= 2);
    faces_used.insert(q.face);
  }
  CHECK(faces_used.size() == 4);
}

TEST_CASE("build_X0 trivial and failing inputs") {
  PlanarGraph g4 = k4();
  CHECK(build_X0(g4, build_P(g4)).empty());

  PlanarGraph g14 = fourteener();
  PathSystem p14 = build_P(g14);
  auto t = thrown([&] { build_X0(g14, p14); });
  REQUIRE(t.has_value());
  CHECK(t->code == Error::Code::kAssumptionViolated);
  CHECK(t->tag == "deg2_indeg");
}

TEST_CASE("build_X0 on the subdivided octahedron") {
  PlanarGraph g = subdivided_octahedron();
  REQUIRE(g.num_vertices() == 18);
  REQUIRE(g.num_edges() == 24);
  REQUIRE(g.girth() == 6);
  for (const auto& f : g.faces()) CHECK(f.length() == 6);

  PathSystem p = build_P(g);
  CHECK(p.size() == 24);
  PathSystem x0 = build_X0(g, p);
  CHECK(x0 == p);  // step 1 already adds every retained arc

  for (int v = 0; v <= 5; ++v) {
    CHECK(x0.outdegree(v) == 4);
    CHECK(x0.indegree(v) == 0);
  }
  for (int m = 6; m <= 17; ++m) {
    CHECK(x0.indegree(m) == 2);
    CHECK(x0.outdegree(m) == 0);
  }
  for (const auto& q : x0.paths()) {
    CHECK(q.length() == 1);
    CHECK(x0.edge_multiplicity(q.verts[0], q.verts[1]) == 1);
  }
  CHECK(check_nice(g, x0).ok);
  CHECK(x0.is_acyclic());
}

TEST_CASE("subsets and closures of a nice system stay well-behaved") {
  PlanarGraph g = subdivided_octahedron();
  PathSystem x0 = build_X0(g, build_P(g));
  REQUIRE(x0.size() == 24);

  // Dropping paths cannot break the subset-stable conditions; here no
  // vertex of the graph triggers D4, so subsets stay nice outright.
  for (int stride : {2, 3, 5}) {
    PathSystem sub;
    for (int i = 0; i < x0.size(); ++i)
      if (i % stride != 0) sub.add(x0.paths()[static_cast<size_t>(i)]);
    CHECK(check_nice(g, sub).ok);
    CHECK(sub.is_acyclic());
  }

  // Forward closures are almost nice at their root (and here even nice).
  PathSystem fc0 = x0.forward_closure(0);
  CHECK(fc0.size() == 4);
  for (const auto& q : fc0.paths()) CHECK(q.out_endvertex() == 0);
  CHECK(check_almost_nice(g, fc0, 0).ok);
  CHECK(check_nice(g, fc0).ok);
  CHECK(x0.forward_closure(6).empty());  // degree-2 vertices emit nothing

  // Every arc covers its edge alone, so none is occupied by the others.
  for (int i = 0; i < x0.size(); ++i) {
    PathSystem rest;
    for (int j = 0; j < x0.size(); ++j)
      if (j != i) rest.add(x0.paths()[static_cast<size_t>(j)]);
    CHECK(!rest.occupied(x0.paths()[static_cast<size_t>(i)]));
  }
}
