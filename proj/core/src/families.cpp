#include "planarsplit/families.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "planarsplit/coloring.hpp"
#include "planarsplit/oracle.hpp"

namespace planarsplit {

PlanarGraph cycle(int n) {
  require_param(n >= 3, "cycle needs n >= 3");
  std::vector<std::pair<int, std::vector<int>>> rot;
  rot.reserve(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    rot.push_back({v, {(v + n - 1) % n, (v + 1) % n}});
  }
  return PlanarGraph::from_rotation(rot);
}

namespace {

using Point = std::pair<int, int>;

// Corner offsets of a hexagonal cell around its center, in cyclic order.
constexpr Point kHexCorner[6] = {{0, 2}, {1, 1}, {1, -1}, {0, -2}, {-1, -1}, {-1, 1}};

Point hex_center(int r, int q) { return {2 * q + r, 3 * r}; }

// Corner points of the cell (r, q), cyclic order.
std::array<Point, 6> hex_corners(int r, int q) {
  auto [cx, cy] = hex_center(r, q);
  std::array<Point, 6> out;
  for (int i = 0; i < 6; ++i) {
    out[static_cast<size_t>(i)] = {cx + kHexCorner[i].first, cy + kHexCorner[i].second};
  }
  return out;
}

PlanarGraph graph_from_cells(const std::set<Point>& cells) {
  std::set<Point> corners;
  for (const auto& [r, q] : cells) {
    for (const Point& p : hex_corners(r, q)) corners.insert(p);
  }
  std::map<Point, int> id;
  int next = 0;
  for (const Point& p : corners) id[p] = next++;
  std::set<std::pair<int, int>> edges;
  for (const auto& [r, q] : cells) {
    auto cs = hex_corners(r, q);
    for (int i = 0; i < 6; ++i) {
      int a = id.at(cs[static_cast<size_t>(i)]);
      int b = id.at(cs[static_cast<size_t>((i + 1) % 6)]);
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  }
  return PlanarGraph::from_edges(std::vector<std::pair<int, int>>(edges.begin(), edges.end()));
}

}  // namespace

PlanarGraph hex_patch(int rows, int cols) {
  require_param(rows >= 1 && cols >= 1, "hex_patch needs rows, cols >= 1");
  std::set<Point> cells;
  for (int r = 0; r < rows; ++r) {
    for (int q = 0; q < cols; ++q) cells.insert({r, q});
  }
  return graph_from_cells(cells);
}

namespace {

// Edges of gadget_A over ids: path 0..t-1, u apex, w apex. Vertex id i is
// path position i+1, so even ids attach to u and odd ids to w.
std::vector<std::pair<int, int>> gadget_A_edges(int t, int u, int w) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < t; ++i) edges.push_back({i, i + 1});
  for (int i = 0; i < t; ++i) edges.push_back({i, i % 2 == 0 ? u : w});
  return edges;
}

}  // namespace

MarkedGraph gadget_A(int t) {
  require_param(t >= 2, "gadget_A needs t >= 2");
  MarkedGraph out;
  out.graph = PlanarGraph::from_edges(gadget_A_edges(t, t, t + 1));
  out.marks = {{"u", t}, {"w", t + 1}};
  return out;
}

BtStructure gadget_B_structure(int t) {
  require_param(t >= 2, "gadget_B needs t >= 2");
  BtStructure out;
  out.u = t;
  out.w = t + 1;
  std::vector<std::pair<int, int>> edges = gadget_A_edges(t, t, t + 1);
  std::vector<int> base_path(static_cast<size_t>(t));
  for (int i = 0; i < t; ++i) base_path[static_cast<size_t>(i)] = i;
  out.t_paths.push_back(std::move(base_path));
  int block = t + 2;
  // One copy per neighbor of u, i.e. per even base id, ascending.
  for (int v = 0; v < t; v += 2) {
    std::vector<int> path(static_cast<size_t>(t));
    for (int i = 0; i < t; ++i) {
      path[static_cast<size_t>(i)] = block + i;
      if (i + 1 < t) edges.push_back({block + i, block + i + 1});
      edges.push_back({block + i, i % 2 == 0 ? v : out.w});
    }
    out.t_paths.push_back(std::move(path));
    block += t;
  }
  std::vector<int> ids(static_cast<size_t>(block));
  for (int i = 0; i < block; ++i) ids[static_cast<size_t>(i)] = i;
  out.graph = PlanarGraph::from_edges(ids, edges);
  return out;
}

MarkedGraph gadget_B(int t) {
  BtStructure s = gadget_B_structure(t);
  return {std::move(s.graph), {{"u", s.u}, {"w", s.w}}};
}

GadgetLemmaReport verify_gadget_lemma(int t) {
  require_param(t >= 2, "gadget_B needs t >= 2");
  if (t > 6) {
    throw Error(Error::Code::kBudgetExceeded,
                "exhaustive gadget check supported up to t = 6, got " + std::to_string(t));
  }
  BtStructure s = gadget_B_structure(t);
  const int n = s.graph.num_vertices();
  const uint64_t all = (n == 64) ? ~0ULL : ((1ULL << n) - 1);

  std::vector<uint64_t> path_mask;
  for (const auto& p : s.t_paths) {
    uint64_t m = 0;
    for (int v : p) m |= 1ULL << v;
    path_mask.push_back(m);
  }
  uint64_t w_nbrs = 0;
  for (int y : s.graph.neighbors(s.w)) w_nbrs |= 1ULL << y;
  std::vector<std::pair<int, uint64_t>> u_nbrs;  // (v, N(v) \ {u}) per neighbor v of u
  for (int v : s.graph.neighbors(s.u)) {
    uint64_t m = 0;
    for (int y : s.graph.neighbors(v)) m |= 1ULL << y;
    u_nbrs.push_back({v, m & ~(1ULL << s.u)});
  }

  GadgetLemmaReport report;
  report.holds = true;
  for (uint64_t mask = 0; mask <= all; ++mask) {
    const int cu = static_cast<int>((mask >> s.u) & 1);
    const int cw = static_cast<int>((mask >> s.w) & 1);
    if (cu != cw) continue;
    ++report.colorings_checked;
    const uint64_t same = cu ? mask : (~mask & all);

    bool ok = false;
    for (uint64_t pm : path_mask) {
      const uint64_t bits = mask & pm;
      if (bits == 0 || bits == pm) {
        ok = true;  // monochromatic t-path (either color)
        break;
      }
    }
    if (!ok && (same & w_nbrs)) ok = true;
    if (!ok) {
      for (const auto& [v, m] : u_nbrs) {
        if (((same >> v) & 1) && (same & m)) {
          ok = true;
          break;
        }
      }
    }
    if (!ok) {
      report.holds = false;
      report.counterexample.assign(static_cast<size_t>(n), 0);
      for (int v = 0; v < n; ++v) {
        report.counterexample[static_cast<size_t>(v)] = static_cast<int>((mask >> v) & 1);
      }
      return report;
    }
    if (mask == all) break;  // avoid wrap when n == 64
  }
  return report;
}

PlanarGraph lower_bound_G(int t) {
  require_param(t >= 2 && t <= 5,
                "lower_bound_G supports t in [2, 5]; members grow too fast beyond");
  if (t == 2) return cycle(5);
  PlanarGraph prev = lower_bound_G(t - 1);

  // Template gadget: local ids, u = t, w = t + 1. Interior ids (everything
  // except u, w) are remapped to fresh blocks, ascending.
  BtStructure tpl = gadget_B_structure(t);
  std::vector<std::pair<int, int>> tpl_edges;
  for (int v : tpl.graph.vertex_ids()) {
    for (int x : tpl.graph.neighbors(v)) {
      if (v < x) tpl_edges.push_back({v, x});
    }
  }
  std::vector<int> interior;  // local ids in remap order
  for (int v : tpl.graph.vertex_ids()) {
    if (v != tpl.u && v != tpl.w) interior.push_back(v);
  }
  std::vector<int> local_rank(static_cast<size_t>(tpl.graph.num_vertices()), -1);
  for (size_t i = 0; i < interior.size(); ++i) {
    local_rank[static_cast<size_t>(interior[i])] = static_cast<int>(i);
  }

  std::vector<std::pair<int, int>> edges;
  for (int v : prev.vertex_ids()) {
    for (int x : prev.neighbors(v)) {
      if (v < x) edges.push_back({v, x});
    }
  }
  std::sort(edges.begin(), edges.end());
  const std::vector<std::pair<int, int>> prev_edges = edges;

  int next_id = prev.num_vertices();  // prev ids are contiguous 0..n-1
  for (const auto& [x, y] : prev_edges) {
    for (const auto& [au, aw] : {std::pair<int, int>{x, y}, {y, x}}) {
      const int base = next_id;
      auto remap = [&](int local) {
        if (local == tpl.u) return au;
        if (local == tpl.w) return aw;
        return base + local_rank[static_cast<size_t>(local)];
      };
      for (const auto& [a, b] : tpl_edges) edges.push_back({remap(a), remap(b)});
      next_id += static_cast<int>(interior.size());
    }
  }
  std::vector<int> ids(static_cast<size_t>(next_id));
  for (int i = 0; i < next_id; ++i) ids[static_cast<size_t>(i)] = i;
  return PlanarGraph::from_edges(ids, edges);
}

namespace {

PlanarGraph build_girth5_graph() {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < 5; ++i) edges.push_back({i, (i + 1) % 5});
  for (int k = 0; k < 5; ++k) {
    const int x = k;
    const int y = (k + 1) % 5;
    const int base = 5 + 9 * k;  // x1..x3, y1..y3, w1..w3
    for (int i = 0; i < 3; ++i) {
      edges.push_back({x, base + i});
      edges.push_back({y, base + 3 + i});
      edges.push_back({base + i, base + 6 + i});
      edges.push_back({base + 3 + i, base + 6 + i});
    }
    edges.push_back({base + 6, base + 7});
    edges.push_back({base + 7, base + 8});
  }
  return PlanarGraph::from_edges(edges);
}

}  // namespace

MarkedGraph girth5_example() {
  // Certify the defining property once: no 2-coloring avoids a
  // monochromatic 3-vertex path.
  static const bool certified = [] {
    PlanarGraph g = build_girth5_graph();
    OracleQuery q{OracleProperty::pk_free(3), OracleQuery::Mode::kForallFail};
    OracleResult r = oracle_search(g, ListAssignment::uniform(g, {0, 1}), q);
    return !r.satisfiable;
  }();
  if (!certified) {
    throw Error(Error::Code::kReconstructionUnavailable,
                "girth-5 example lost its defining property");
  }
  MarkedGraph out;
  out.graph = build_girth5_graph();
  out.marks = {{"u", 0},  {"v", 1},  {"u1", 5},  {"u2", 6},  {"u3", 7},
               {"v1", 8}, {"v2", 9}, {"v3", 10}, {"w1", 11}, {"w2", 12},
               {"w3", 13}};
  return out;
}

namespace {

struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n).
  uint64_t below(uint64_t n) { return next() % n; }
};

constexpr Point kCellNbr[6] = {{0, 1}, {0, -1}, {1, 0}, {-1, 0}, {1, -1}, {-1, 1}};

}  // namespace

PlanarGraph random_planar_girth6(int n, uint64_t seed) {
  require_param(n >= 6, "random_planar_girth6 needs n >= 6");
  SplitMix64 rng(seed);

  std::set<Point> cells{{0, 0}};
  std::set<Point> corners;
  for (const Point& p : hex_corners(0, 0)) corners.insert(p);
  while (static_cast<int>(corners.size()) < n) {
    std::set<Point> frontier;
    for (const auto& [r, q] : cells) {
      for (const Point& d : kCellNbr) {
        Point c{r + d.first, q + d.second};
        if (!cells.count(c)) frontier.insert(c);
      }
    }
    auto it = frontier.begin();
    std::advance(it, static_cast<long>(rng.below(frontier.size())));
    cells.insert(*it);
    for (const Point& p : hex_corners(it->first, it->second)) corners.insert(p);
  }
  PlanarGraph g = graph_from_cells(cells);

  // Sprinkle chords that keep the girth at 6: any face pair at distance
  // >= 5 closes a cycle of length >= 6.
  const int attempts = 64 + n / 16;
  for (int a = 0; a < attempts; ++a) {
    const auto& fs = g.faces();
    // Only faces of length >= 10 can host a chord between vertices at
    // distance >= 5; initially that is just the outer face.
    std::vector<int> candidates;
    for (size_t i = 0; i < fs.size(); ++i) {
      if (fs[i].length() >= 10) candidates.push_back(static_cast<int>(i));
    }
    if (candidates.empty()) break;
    const int face = candidates[rng.below(candidates.size())];
    const auto& walk = fs[static_cast<size_t>(face)].walk;
    const size_t m = walk.size();
    const size_t i = rng.below(m);
    const size_t j = (i + 5 + rng.below(m - 9)) % m;
    const int u = walk[i];
    const int v = walk[j];
    if (u == v || g.adjacent(u, v) || !g.distance_at_least(u, v, 5)) continue;
    g = g.add_edge_in_face(face, u, v);
  }
  return g;
}

}  // namespace planarsplit
