#pragma once

// Hand-built graphs shared by the unit tests.

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "planarsplit/graph.hpp"

namespace test_fixtures {

// Octahedron: vertices 0..5, all of degree 4. 0 and 5 are the poles, the
// ring is 1-2-3-4; antipodal pairs (0,5), (1,3), (2,4) are the non-edges.
inline std::vector<std::pair<int, int>> octahedron_edges() {
  return {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {2, 3},
          {3, 4}, {4, 1}, {5, 1}, {5, 2}, {5, 3}, {5, 4}};
}

// Subdivides the listed edges once each. Subdivision vertices get ids
// first_new, first_new + 1, ... in the (min, max) order of the subdivided
// edges; each splits its edge {u, v} into {u, m} and {m, v}. Fills mid_of
// with the id assigned per original edge when given.
inline std::vector<std::pair<int, int>> subdivide_edges(
    std::vector<std::pair<int, int>> edges,
    std::vector<std::pair<int, int>> which, int first_new,
    std::map<std::pair<int, int>, int>* mid_of = nullptr) {
  auto norm = [](std::pair<int, int> e) {
    return e.first < e.second ? e : std::pair<int, int>{e.second, e.first};
  };
  for (auto& e : edges) e = norm(e);
  for (auto& e : which) e = norm(e);
  std::sort(which.begin(), which.end());
  std::map<std::pair<int, int>, int> mid;
  int next = first_new;
  for (const auto& e : which) mid[e] = next++;
  std::vector<std::pair<int, int>> out;
  for (const auto& e : edges) {
    auto it = mid.find(e);
    if (it == mid.end()) {
      out.push_back(e);
      continue;
    }
    out.push_back({e.first, it->second});
    out.push_back({it->second, e.second});
  }
  if (mid_of) *mid_of = std::move(mid);
  return out;
}

// Every octahedron edge subdivided once: 18 vertices, 24 edges, all eight
// faces hexagons, girth 6. Originals keep ids 0..5 (degree 4), subdivision
// vertices get 6..17 (degree 2).
inline planarsplit::PlanarGraph subdivided_octahedron(
    std::map<std::pair<int, int>, int>* mid_of = nullptr) {
  auto base = octahedron_edges();
  return planarsplit::PlanarGraph::from_edges(
      subdivide_edges(base, base, 6, mid_of));
}

// C14 with chords 0-5, 0-9 and 3-11: vertex 0 has degree 4, vertices 3, 5,
// 9 and 11 degree 3, the rest degree 2. The five faces have lengths
// 6, 6, 6, 9, 7.
inline planarsplit::PlanarGraph fourteener() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 14; ++i) edges.push_back({i, (i + 1) % 14});
  edges.push_back({0, 5});
  edges.push_back({0, 9});
  edges.push_back({3, 11});
  return planarsplit::PlanarGraph::from_edges(edges);
}

// The 6-cycle 0-1-...-5-0 from an explicit rotation; two hexagonal faces.
inline planarsplit::PlanarGraph c6_rotation() {
  std::vector<std::pair<int, std::vector<int>>> rot;
  for (int i = 0; i < 6; ++i) rot.push_back({i, {(i + 5) % 6, (i + 1) % 6}});
  return planarsplit::PlanarGraph::from_rotation(rot);
}

}  // namespace test_fixtures
