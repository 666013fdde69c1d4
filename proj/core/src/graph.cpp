#include "planarsplit/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/property_map/property_map.hpp>

namespace planarsplit {

namespace {

std::string edge_str(int u, int v) {
  return "{" + std::to_string(u) + "," + std::to_string(v) + "}";
}

}  // namespace

PlanarGraph PlanarGraph::from_rotation(
    const std::vector<std::pair<int, std::vector<int>>>& rotation) {
  PlanarGraph g;
  int mx = -1;
  for (const auto& [v, nbs] : rotation) {
    require_param(v >= 0, "vertex ids must be non-negative, got " + std::to_string(v));
    mx = std::max(mx, v);
  }
  g.max_id_ = mx;
  g.alive_.assign(static_cast<size_t>(mx + 1), 0);
  g.rot_.assign(static_cast<size_t>(mx + 1), {});
  for (const auto& [v, nbs] : rotation) {
    if (g.alive_[static_cast<size_t>(v)]) {
      throw Error(Error::Code::kInconsistentRotation,
                  "vertex " + std::to_string(v) + " listed twice");
    }
    g.alive_[static_cast<size_t>(v)] = 1;
    g.rot_[static_cast<size_t>(v)] = nbs;
  }
  g.rebuild_ids();
  g.validate_rotation_structure();
  long long half = 0;
  for (int v : g.ids_) half += static_cast<long long>(g.rot_[static_cast<size_t>(v)].size());
  g.num_edges_ = static_cast<int>(half / 2);
  g.ensure_faces();  // runs the per-component Euler check; throws NotPlanar
  return g;
}

PlanarGraph PlanarGraph::from_edges(const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> ids;
  for (const auto& [u, v] : edges) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return from_edges(ids, edges);
}

PlanarGraph PlanarGraph::from_edges(const std::vector<int>& ids,
                                    const std::vector<std::pair<int, int>>& edges) {
  for (int v : ids) require_param(v >= 0, "vertex ids must be non-negative");
  std::vector<int> sorted_ids = ids;
  std::sort(sorted_ids.begin(), sorted_ids.end());
  require_param(std::adjacent_find(sorted_ids.begin(), sorted_ids.end()) == sorted_ids.end(),
                "duplicate vertex id");

  std::vector<std::pair<int, int>> es;
  es.reserve(edges.size());
  for (auto [u, v] : edges) {
    require_param(u != v, "self-loop at vertex " + std::to_string(u));
    require_param(std::binary_search(sorted_ids.begin(), sorted_ids.end(), u) &&
                      std::binary_search(sorted_ids.begin(), sorted_ids.end(), v),
                  "edge endpoint not in vertex set: " + edge_str(u, v));
    es.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(es.begin(), es.end());
  require_param(std::adjacent_find(es.begin(), es.end()) == es.end(), "duplicate edge");

  PlanarGraph g;
  g.max_id_ = sorted_ids.empty() ? -1 : sorted_ids.back();
  g.alive_.assign(static_cast<size_t>(g.max_id_ + 1), 0);
  g.rot_.assign(static_cast<size_t>(g.max_id_ + 1), {});
  for (int v : sorted_ids) g.alive_[static_cast<size_t>(v)] = 1;
  g.rebuild_ids();
  g.num_edges_ = static_cast<int>(es.size());
  if (es.empty()) return g;

  // Compact ids to [0, n) for the planarity test.
  const int n = static_cast<int>(sorted_ids.size());
  auto compact = [&](int v) {
    return static_cast<int>(std::lower_bound(sorted_ids.begin(), sorted_ids.end(), v) -
                            sorted_ids.begin());
  };

  using BoostGraph =
      boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                            boost::property<boost::edge_index_t, int>>;
  BoostGraph bg(static_cast<size_t>(n));
  for (const auto& [u, v] : es) boost::add_edge(compact(u), compact(v), bg);
  auto e_index = boost::get(boost::edge_index, bg);
  int ei_count = 0;
  for (auto [ei, ee] = boost::edges(bg); ei != ee; ++ei) boost::put(e_index, *ei, ei_count++);

  using EdgeDesc = boost::graph_traits<BoostGraph>::edge_descriptor;
  std::vector<std::vector<EdgeDesc>> embedding(static_cast<size_t>(n));
  bool planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = bg,
      boost::boyer_myrvold_params::embedding = boost::make_iterator_property_map(
          embedding.begin(), boost::get(boost::vertex_index, bg)));
  if (!planar) {
    throw Error(Error::Code::kNotPlanar, "edge list has no planar embedding");
  }

  // The embedding order at each vertex is adopted as the counterclockwise
  // rotation; any consistent handedness describes the same sphere map.
  for (int ci = 0; ci < n; ++ci) {
    int v = sorted_ids[static_cast<size_t>(ci)];
    auto& nbs = g.rot_[static_cast<size_t>(v)];
    nbs.reserve(embedding[static_cast<size_t>(ci)].size());
    for (EdgeDesc e : embedding[static_cast<size_t>(ci)]) {
      int s = static_cast<int>(boost::source(e, bg));
      int t = static_cast<int>(boost::target(e, bg));
      int other = (s == ci) ? t : s;
      nbs.push_back(sorted_ids[static_cast<size_t>(other)]);
    }
  }
  g.validate_rotation_structure();
  return g;
}

void PlanarGraph::rebuild_ids() {
  ids_.clear();
  for (int v = 0; v <= max_id_; ++v) {
    if (alive_[static_cast<size_t>(v)]) ids_.push_back(v);
  }
}

void PlanarGraph::invalidate_caches() {
  faces_valid_ = false;
  faces_.clear();
  face_at_.clear();
  girth_valid_ = false;
}

void PlanarGraph::purge_caches() const {
  faces_valid_ = false;
  faces_.clear();
  faces_.shrink_to_fit();
  face_at_.clear();
  face_at_.shrink_to_fit();
  girth_valid_ = false;
}

void PlanarGraph::validate_rotation_structure() const {
  for (int v : ids_) {
    const auto& nbs = rot_[static_cast<size_t>(v)];
    std::vector<int> seen;
    for (int u : nbs) {
      if (u == v) {
        throw Error(Error::Code::kInconsistentRotation,
                    "self-loop at vertex " + std::to_string(v));
      }
      if (!has_vertex(u)) {
        throw Error(Error::Code::kInconsistentRotation,
                    "rotation of " + std::to_string(v) + " names unknown vertex " +
                        std::to_string(u));
      }
      seen.push_back(u);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
      throw Error(Error::Code::kInconsistentRotation,
                  "repeated neighbor in rotation of " + std::to_string(v));
    }
  }
  for (int v : ids_) {
    for (int u : rot_[static_cast<size_t>(v)]) {
      if (rotation_index(u, v) == -1) {
        throw Error(Error::Code::kInconsistentRotation,
                    "edge " + edge_str(v, u) + " missing from rotation of " +
                        std::to_string(u));
      }
    }
  }
}

int PlanarGraph::degree(int v) const {
  require_vertex(v);
  return static_cast<int>(rot_[static_cast<size_t>(v)].size());
}

const std::vector<int>& PlanarGraph::neighbors(int v) const {
  require_vertex(v);
  return rot_[static_cast<size_t>(v)];
}

bool PlanarGraph::adjacent(int u, int v) const {
  return rotation_index(u, v) != -1;
}

int PlanarGraph::rotation_index(int v, int u) const {
  require_vertex(v);
  const auto& nbs = rot_[static_cast<size_t>(v)];
  for (size_t i = 0; i < nbs.size(); ++i) {
    if (nbs[i] == u) return static_cast<int>(i);
  }
  return -1;
}

int PlanarGraph::pred_neighbor(int v, int u) const {
  int i = rotation_index(v, u);
  require_param(i != -1, std::to_string(u) + " is not a neighbor of " + std::to_string(v));
  int d = degree(v);
  return rot_[static_cast<size_t>(v)][static_cast<size_t>((i - 1 + d) % d)];
}

int PlanarGraph::succ_neighbor(int v, int u) const {
  int i = rotation_index(v, u);
  require_param(i != -1, std::to_string(u) + " is not a neighbor of " + std::to_string(v));
  int d = degree(v);
  return rot_[static_cast<size_t>(v)][static_cast<size_t>((i + 1) % d)];
}

const std::vector<Face>& PlanarGraph::faces() const {
  ensure_faces();
  return faces_;
}

int PlanarGraph::face_of_directed(int u, int v) const {
  ensure_faces();
  int i = rotation_index(u, v);
  require_param(i != -1, std::to_string(v) + " is not a neighbor of " + std::to_string(u));
  return face_at_[static_cast<size_t>(u)][static_cast<size_t>(i)];
}

void PlanarGraph::ensure_faces() const {
  if (faces_valid_) return;
  faces_.clear();
  face_at_.assign(static_cast<size_t>(max_id_ + 1), {});
  for (int v : ids_) {
    face_at_[static_cast<size_t>(v)].assign(rot_[static_cast<size_t>(v)].size(), -1);
  }
  if (ids_.empty()) {
    faces_.emplace_back();  // the whole sphere
    faces_valid_ = true;
    return;
  }

  // Trace each directed edge's face once. After arriving at w along u -> w,
  // the walk leaves along the cyclic predecessor of u in the rotation of w.
  for (int v : ids_) {
    const int dv = static_cast<int>(rot_[static_cast<size_t>(v)].size());
    for (int i = 0; i < dv; ++i) {
      if (face_at_[static_cast<size_t>(v)][static_cast<size_t>(i)] != -1) continue;
      const int id = static_cast<int>(faces_.size());
      faces_.emplace_back();
      auto& walk = faces_.back().walk;
      int cu = v;
      int ci = i;
      do {
        face_at_[static_cast<size_t>(cu)][static_cast<size_t>(ci)] = id;
        walk.push_back(cu);
        const int w = rot_[static_cast<size_t>(cu)][static_cast<size_t>(ci)];
        const int idx = rotation_index(w, cu);
        const int dw = static_cast<int>(rot_[static_cast<size_t>(w)].size());
        cu = w;
        ci = (idx - 1 + dw) % dw;
      } while (!(cu == v && ci == i));
    }
  }

  // Component bookkeeping for the Euler check; each isolated vertex is a
  // component of its own and carries one (empty-walk) face.
  std::vector<int> comp_of(static_cast<size_t>(max_id_ + 1), -1);
  int num_comps = 0;
  for (int s : ids_) {
    if (comp_of[static_cast<size_t>(s)] != -1) continue;
    const int c = num_comps++;
    std::deque<int> q{s};
    comp_of[static_cast<size_t>(s)] = c;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : rot_[static_cast<size_t>(x)]) {
        if (comp_of[static_cast<size_t>(y)] == -1) {
          comp_of[static_cast<size_t>(y)] = c;
          q.push_back(y);
        }
      }
    }
  }
  std::vector<long long> comp_n(static_cast<size_t>(num_comps), 0);
  std::vector<long long> comp_half_edges(static_cast<size_t>(num_comps), 0);
  std::vector<long long> comp_f(static_cast<size_t>(num_comps), 0);
  for (int v : ids_) {
    const int c = comp_of[static_cast<size_t>(v)];
    comp_n[static_cast<size_t>(c)] += 1;
    comp_half_edges[static_cast<size_t>(c)] +=
        static_cast<long long>(rot_[static_cast<size_t>(v)].size());
  }
  long long walk_total = 0;
  for (const Face& f : faces_) {
    walk_total += f.length();
    comp_f[static_cast<size_t>(comp_of[static_cast<size_t>(f.walk.front())])] += 1;
  }
  require_assumption(walk_total == 2LL * num_edges_, "face_walk_total",
                     "directed edges traced: " + std::to_string(walk_total));
  for (int v : ids_) {
    if (rot_[static_cast<size_t>(v)].empty()) {
      faces_.emplace_back();
      comp_f[static_cast<size_t>(comp_of[static_cast<size_t>(v)])] += 1;
    }
  }
  for (int c = 0; c < num_comps; ++c) {
    const long long n = comp_n[static_cast<size_t>(c)];
    const long long e = comp_half_edges[static_cast<size_t>(c)] / 2;
    const long long f = comp_f[static_cast<size_t>(c)];
    if (n - e + f != 2) {
      throw Error(Error::Code::kNotPlanar,
                  "rotation is not a sphere embedding: component has n=" + std::to_string(n) +
                      " e=" + std::to_string(e) + " f=" + std::to_string(f));
    }
  }
  faces_valid_ = true;
}

int PlanarGraph::girth() const {
  if (girth_valid_) return girth_;
  int best = kInfinity;
  std::vector<int> dist(static_cast<size_t>(max_id_ + 1));
  std::vector<int> parent(static_cast<size_t>(max_id_ + 1));
  // From every root, BFS; every non-tree edge {x, y} closes a cycle of
  // length at most dist[x] + dist[y] + 1 through their meeting point, and
  // for a root on a shortest cycle the bound is attained, so the minimum
  // over all roots is exact.
  for (int r : ids_) {
    for (int v : ids_) {
      dist[static_cast<size_t>(v)] = -1;
      parent[static_cast<size_t>(v)] = -1;
    }
    std::deque<int> q{r};
    dist[static_cast<size_t>(r)] = 0;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      if (best != kInfinity && 2 * dist[static_cast<size_t>(x)] >= best) break;
      for (int y : rot_[static_cast<size_t>(x)]) {
        if (dist[static_cast<size_t>(y)] == -1) {
          dist[static_cast<size_t>(y)] = dist[static_cast<size_t>(x)] + 1;
          parent[static_cast<size_t>(y)] = x;
          q.push_back(y);
        } else if (parent[static_cast<size_t>(x)] != y && parent[static_cast<size_t>(y)] != x) {
          best = std::min(best, dist[static_cast<size_t>(x)] + dist[static_cast<size_t>(y)] + 1);
        }
      }
    }
  }
  girth_ = best;
  girth_valid_ = true;
  return girth_;
}

int PlanarGraph::distance(int u, int v) const {
  require_vertex(u);
  require_vertex(v);
  if (u == v) return 0;
  std::vector<int> dist(static_cast<size_t>(max_id_ + 1), -1);
  std::deque<int> q{u};
  dist[static_cast<size_t>(u)] = 0;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (int y : rot_[static_cast<size_t>(x)]) {
      if (dist[static_cast<size_t>(y)] != -1) continue;
      dist[static_cast<size_t>(y)] = dist[static_cast<size_t>(x)] + 1;
      if (y == v) return dist[static_cast<size_t>(y)];
      q.push_back(y);
    }
  }
  return kInfinity;
}

bool PlanarGraph::distance_at_least(int u, int v, int k) const {
  require_vertex(u);
  require_vertex(v);
  if (k <= 0) return true;
  if (u == v) return false;
  // BFS capped at depth k-1: if v is not reached, distance(u, v) >= k.
  std::vector<int> dist(static_cast<size_t>(max_id_ + 1), -1);
  std::deque<int> q{u};
  dist[static_cast<size_t>(u)] = 0;
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    if (dist[static_cast<size_t>(x)] >= k - 1) continue;
    for (int y : rot_[static_cast<size_t>(x)]) {
      if (dist[static_cast<size_t>(y)] != -1) continue;
      if (y == v) return false;
      dist[static_cast<size_t>(y)] = dist[static_cast<size_t>(x)] + 1;
      q.push_back(y);
    }
  }
  return true;
}

std::vector<std::vector<int>> PlanarGraph::components() const {
  std::vector<std::vector<int>> comps;
  std::vector<char> seen(static_cast<size_t>(max_id_ + 1), 0);
  for (int s : ids_) {
    if (seen[static_cast<size_t>(s)]) continue;
    comps.emplace_back();
    auto& comp = comps.back();
    std::deque<int> q{s};
    seen[static_cast<size_t>(s)] = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      comp.push_back(x);
      for (int y : rot_[static_cast<size_t>(x)]) {
        if (!seen[static_cast<size_t>(y)]) {
          seen[static_cast<size_t>(y)] = 1;
          q.push_back(y);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
  }
  return comps;
}

PlanarGraph PlanarGraph::delete_vertices(const std::vector<int>& to_delete) const {
  std::vector<char> dead(static_cast<size_t>(max_id_ + 1), 0);
  for (int v : to_delete) {
    require_vertex(v);
    dead[static_cast<size_t>(v)] = 1;
  }
  PlanarGraph g = *this;
  g.invalidate_caches();
  for (int v : ids_) {
    auto& nbs = g.rot_[static_cast<size_t>(v)];
    if (dead[static_cast<size_t>(v)]) {
      g.alive_[static_cast<size_t>(v)] = 0;
      nbs.clear();
      nbs.shrink_to_fit();
      continue;
    }
    nbs.erase(std::remove_if(nbs.begin(), nbs.end(),
                             [&](int u) { return dead[static_cast<size_t>(u)] != 0; }),
              nbs.end());
  }
  g.rebuild_ids();
  long long half = 0;
  for (int v : g.ids_) half += static_cast<long long>(g.rot_[static_cast<size_t>(v)].size());
  g.num_edges_ = static_cast<int>(half / 2);
  return g;
}

PlanarGraph PlanarGraph::add_edge_in_face(int face_index, int u, int v) const {
  require_vertex(u);
  require_vertex(v);
  require_param(u != v, "cannot connect a vertex to itself");
  ensure_faces();
  require_param(face_index >= 0 && face_index < static_cast<int>(faces_.size()),
                "face index out of range: " + std::to_string(face_index));
  const auto& walk = faces_[static_cast<size_t>(face_index)].walk;
  const int m = static_cast<int>(walk.size());
  int pu = -1;
  int pv = -1;
  for (int i = 0; i < m; ++i) {
    if (pu == -1 && walk[static_cast<size_t>(i)] == u) pu = i;
    if (pv == -1 && walk[static_cast<size_t>(i)] == v) pv = i;
  }
  if (pu == -1 || pv == -1) {
    throw Error(Error::Code::kNotOnFace,
                edge_str(u, v) + " endpoints not both on face " + std::to_string(face_index));
  }
  if (adjacent(u, v)) {
    throw Error(Error::Code::kAlreadyAdjacent, edge_str(u, v) + " already present");
  }

  // First occurrences: the walk passes ... a -> u -> b ... and
  // ... c -> v -> d ....  Splitting the face so the new walk turns from u
  // to v means v becomes the new predecessor of a at u (walk pieces
  // a..u,v and ..u,b survive), and symmetrically u slots in before c at v.
  const int a = walk[static_cast<size_t>((pu - 1 + m) % m)];
  const int c = walk[static_cast<size_t>((pv - 1 + m) % m)];
  const int b = walk[static_cast<size_t>((pu + 1) % m)];
  const int d = walk[static_cast<size_t>((pv + 1) % m)];
  require_assumption(pred_neighbor(u, a) == b, "face_walk_consistency",
                     "vertex " + std::to_string(u) + " on face " + std::to_string(face_index));
  require_assumption(pred_neighbor(v, c) == d, "face_walk_consistency",
                     "vertex " + std::to_string(v) + " on face " + std::to_string(face_index));

  PlanarGraph g = *this;
  g.invalidate_caches();
  auto insert_before = [&](int at, int target, int inserted) {
    auto& nbs = g.rot_[static_cast<size_t>(at)];
    auto it = std::find(nbs.begin(), nbs.end(), target);
    nbs.insert(it, inserted);
  };
  insert_before(u, a, v);
  insert_before(v, c, u);
  g.num_edges_ += 1;
  return g;
}

PlanarGraph PlanarGraph::remove_edge(int u, int v) const {
  require_vertex(u);
  require_vertex(v);
  require_param(adjacent(u, v), edge_str(u, v) + " is not an edge");
  PlanarGraph g = *this;
  g.invalidate_caches();
  auto erase_from = [&](int at, int gone) {
    auto& nbs = g.rot_[static_cast<size_t>(at)];
    nbs.erase(std::find(nbs.begin(), nbs.end(), gone));
  };
  erase_from(u, v);
  erase_from(v, u);
  g.num_edges_ -= 1;
  return g;
}

}  // namespace planarsplit
