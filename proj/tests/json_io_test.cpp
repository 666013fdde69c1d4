#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <functional>
#include <optional>

#include "planarsplit/coloring.hpp"
#include "planarsplit/graph.hpp"
#include "planarsplit/json_io.hpp"

using namespace planarsplit;

namespace {

std::optional<Error::Code> thrown_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

PlanarGraph hexagon() {
  std::vector<std::pair<int, std::vector<int>>> rot;
  for (int v = 0; v < 6; ++v) rot.push_back({v, {(v + 5) % 6, (v + 1) % 6}});
  return PlanarGraph::from_rotation(rot);
}

}  // namespace

TEST_CASE("graph round trip preserves the embedding and marks") {
  PlanarGraph g = hexagon();
  std::string text = graph_to_json(g, {{"root", 3}, {"apex", 0}});
  MarkedGraph back = graph_from_json(text);
  CHECK(back.graph == g);
  CHECK(back.marks.at("root") == 3);
  CHECK(back.marks.at("apex") == 0);
  // Serialization is deterministic.
  CHECK(graph_to_json(back.graph, back.marks) == text);
}

TEST_CASE("graph with isolated vertex round trips") {
  PlanarGraph g = PlanarGraph::from_edges({0, 1, 9}, {{0, 1}});
  MarkedGraph back = graph_from_json(graph_to_json(g));
  CHECK(back.graph == g);
  CHECK(back.graph.has_vertex(9));
  CHECK(back.graph.degree(9) == 0);
  CHECK(back.marks.empty());
}

TEST_CASE("empty graph round trips") {
  PlanarGraph g = PlanarGraph::from_edges(std::vector<std::pair<int, int>>{});
  MarkedGraph back = graph_from_json(graph_to_json(g));
  CHECK(back.graph == g);
  CHECK(back.graph.num_vertices() == 0);
}

TEST_CASE("graph parse failures") {
  CHECK(thrown_code([] { graph_from_json("not json"); }) == Error::Code::kParseError);
  CHECK(thrown_code([] { graph_from_json("[]"); }) == Error::Code::kParseError);
  CHECK(thrown_code([] { graph_from_json("{\"vertices\": [0]}"); }) ==
        Error::Code::kParseError);  // no format
  CHECK(thrown_code([] { graph_from_json("{\"format\": 2, \"vertices\": []}"); }) ==
        Error::Code::kParseError);
  CHECK(thrown_code([] { graph_from_json("{\"format\": 1}"); }) == Error::Code::kParseError);
  CHECK(thrown_code([] {
          graph_from_json("{\"format\": 1, \"vertices\": [0, 0]}");
        }) == Error::Code::kParseError);
  CHECK(thrown_code([] {
          graph_from_json("{\"format\": 1, \"vertices\": [0], \"rotation\": {\"1\": []}}");
        }) == Error::Code::kParseError);
  CHECK(thrown_code([] {
          graph_from_json("{\"format\": 1, \"vertices\": [0], \"rotation\": {\"x\": []}}");
        }) == Error::Code::kParseError);
  CHECK(thrown_code([] {
          graph_from_json(
              "{\"format\": 1, \"vertices\": [0, 1], \"marks\": {\"m\": 7}}");
        }) == Error::Code::kParseError);
  // Structural errors keep their own codes.
  CHECK(thrown_code([] {
          graph_from_json(
              "{\"format\": 1, \"vertices\": [0, 1], \"rotation\": {\"0\": [1]}}");
        }) == Error::Code::kInconsistentRotation);
}

TEST_CASE("coloring round trip") {
  Coloring c;
  c.set(0, 2);
  c.set(11, 0);
  c.set(3, 5);
  std::string text = coloring_to_json(c);
  Coloring back = coloring_from_json(text);
  CHECK(back == c);
  CHECK(coloring_to_json(back) == text);
  CHECK(coloring_from_json("{\"format\": 1, \"colors\": {}}").num_colored() == 0);
  CHECK(thrown_code([] { coloring_from_json("{\"format\": 1}"); }) == Error::Code::kParseError);
  CHECK(thrown_code([] {
          coloring_from_json("{\"format\": 1, \"colors\": {\"0\": -1}}");
        }) == Error::Code::kParseError);
  CHECK(thrown_code([] {
          coloring_from_json("{\"format\": 1, \"colors\": {\"01\": 1}}");
        }) == Error::Code::kParseError);
}

TEST_CASE("lists round trip") {
  ListAssignment l;
  l.set(2, {4, 1});
  l.set(0, {0, 1, 2});
  std::string text = lists_to_json(l);
  ListAssignment back = lists_from_json(text);
  CHECK(back == l);
  CHECK(lists_to_json(back) == text);
  CHECK(thrown_code([] {
          lists_from_json("{\"format\": 1, \"lists\": {\"0\": [1]}}");
        }) == Error::Code::kParseError);
  CHECK(thrown_code([] { lists_from_json("{\"format\": 1, \"lists\": []}"); }) ==
        Error::Code::kParseError);
}

TEST_CASE("dot export lists every edge once") {
  PlanarGraph g = hexagon();
  Coloring c;
  c.set(0, 1);
  std::string dot = graph_to_dot(g, &c);
  CHECK(dot.find("graph G {") == 0);
  CHECK(dot.find("v0 -- v1;") != std::string::npos);
  CHECK(dot.find("v5 -- v0") == std::string::npos);  // emitted as v0 -- v5
  CHECK(dot.find("v0 -- v5;") != std::string::npos);
  CHECK(dot.find("c1") != std::string::npos);
}

TEST_CASE("file helpers") {
  std::string path =
      (std::filesystem::temp_directory_path() / "planarsplit_roundtrip.txt").string();
  write_text_file(path, "hello\n");
  CHECK(read_text_file(path) == "hello\n");
  CHECK(thrown_code([] { read_text_file("/nonexistent/nope.json"); }) == Error::Code::kIoError);
}
