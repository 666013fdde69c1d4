#include "planarsplit/path_system.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace planarsplit {

namespace {

std::pair<int, int> norm_edge(int u, int v) {
  return {std::min(u, v), std::max(u, v)};
}

int count_of(const std::map<int, int>& m, int key) {
  auto it = m.find(key);
  return it == m.end() ? 0 : it->second;
}

// Vertices reachable from `from` in one or more hops of the out->in
// endpoint relation.
std::set<int> reachable_set(const std::vector<FacialPath>& paths, int from) {
  std::map<int, std::vector<int>> adj;
  for (const auto& p : paths) adj[p.out_endvertex()].push_back(p.in_endvertex());
  std::set<int> visited;
  std::vector<int> stack;
  auto expand = [&](int u) {
    auto it = adj.find(u);
    if (it == adj.end()) return;
    for (int w : it->second)
      if (visited.insert(w).second) stack.push_back(w);
  };
  expand(from);
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    expand(u);
  }
  return visited;
}

}  // namespace

bool FacialPath::has_edge(int u, int v) const {
  for (size_t i = 0; i + 1 < verts.size(); ++i) {
    int a = verts[i], b = verts[i + 1];
    if ((a == u && b == v) || (a == v && b == u)) return true;
  }
  return false;
}

bool PathSystem::add(FacialPath p) {
  require_param(p.verts.size() >= 2, "facial path needs at least two vertices");
  std::set<int> distinct(p.verts.begin(), p.verts.end());
  require_param(distinct.size() == p.verts.size(), "facial path repeats a vertex");
  auto it = std::lower_bound(paths_.begin(), paths_.end(), p);
  if (it != paths_.end() && *it == p) return false;
  ++outdeg_[p.out_endvertex()];
  ++indeg_[p.in_endvertex()];
  ++end_count_[p.out_endvertex()];
  ++end_count_[p.in_endvertex()];
  for (size_t i = 1; i + 1 < p.verts.size(); ++i) ++inner_count_[p.verts[i]];
  for (size_t i = 0; i + 1 < p.verts.size(); ++i)
    ++edge_count_[norm_edge(p.verts[i], p.verts[i + 1])];
  paths_.insert(it, std::move(p));
  return true;
}

bool PathSystem::contains(const FacialPath& p) const {
  auto it = std::lower_bound(paths_.begin(), paths_.end(), p);
  return it != paths_.end() && *it == p;
}

int PathSystem::indegree(int v) const { return count_of(indeg_, v); }

int PathSystem::outdegree(int v) const { return count_of(outdeg_, v); }

bool PathSystem::is_inner(int v) const { return count_of(inner_count_, v) > 0; }

bool PathSystem::is_endvertex(int v) const { return count_of(end_count_, v) > 0; }

std::vector<int> PathSystem::vertices() const {
  std::set<int> s;
  for (const auto& p : paths_) s.insert(p.verts.begin(), p.verts.end());
  return {s.begin(), s.end()};
}

int PathSystem::edge_multiplicity(int u, int v) const {
  auto it = edge_count_.find(norm_edge(u, v));
  return it == edge_count_.end() ? 0 : it->second;
}

std::vector<int> PathSystem::paths_covering(int u, int v) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (paths_[static_cast<size_t>(i)].has_edge(u, v)) out.push_back(i);
  return out;
}

std::vector<int> PathSystem::paths_into(int v) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (paths_[static_cast<size_t>(i)].in_endvertex() == v) out.push_back(i);
  return out;
}

std::vector<int> PathSystem::paths_out_of(int v) const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (paths_[static_cast<size_t>(i)].out_endvertex() == v) out.push_back(i);
  return out;
}

bool PathSystem::occupied(const FacialPath& p) const {
  require_param(p.verts.size() >= 2, "facial path needs at least two vertices");
  return covers_edge(p.verts[0], p.verts[1]) ||
         covers_edge(p.verts[p.verts.size() - 2], p.verts.back());
}

bool PathSystem::reaches(int from, int to) const {
  return reachable_set(paths_, from).count(to) > 0;
}

bool PathSystem::is_acyclic() const {
  std::map<int, std::vector<int>> adj;
  std::set<int> verts_in_relation;
  for (const auto& p : paths_) {
    adj[p.out_endvertex()].push_back(p.in_endvertex());
    verts_in_relation.insert(p.out_endvertex());
    verts_in_relation.insert(p.in_endvertex());
  }
  // Iterative DFS; a gray-on-gray edge closes a cycle.
  std::map<int, int> color;  // 0 new, 1 on stack, 2 done
  for (int s : verts_in_relation) {
    if (color[s] != 0) continue;
    std::vector<std::pair<int, size_t>> stack{{s, 0}};
    color[s] = 1;
    while (!stack.empty()) {
      auto& [v, idx] = stack.back();
      auto it = adj.find(v);
      size_t deg = it == adj.end() ? 0 : it->second.size();
      if (idx == deg) {
        color[v] = 2;
        stack.pop_back();
        continue;
      }
      int w = it->second[idx++];
      int cw = color[w];
      if (cw == 1) return false;
      if (cw == 0) {
        color[w] = 1;
        stack.push_back({w, 0});
      }
    }
  }
  return true;
}

PathSystem PathSystem::forward_closure(int w) const {
  std::set<int> reached = reachable_set(paths_, w);
  PathSystem out;
  for (const auto& p : paths_)
    if (p.out_endvertex() == w || reached.count(p.out_endvertex()) > 0) out.add(p);
  return out;
}

std::string PathSystem::dump() const {
  std::ostringstream out;
  for (const auto& p : paths_) {
    out << "face:" << p.face << " out:" << p.verts.front();
    for (size_t i = 1; i + 1 < p.verts.size(); ++i) out << ' ' << p.verts[i];
    out << " in:" << p.verts.back() << '\n';
  }
  return out.str();
}

namespace {

NiceReport fail_report(std::string cond, int v,
                       std::pair<int, int> e = {-1, -1}) {
  NiceReport r;
  r.ok = false;
  r.failed_condition = std::move(cond);
  r.witness_vertex = v;
  r.witness_edge = e;
  return r;
}

// Shared body of check_nice (root == -1) and check_almost_nice.
NiceReport check_conditions(const PlanarGraph& g, const PathSystem& x, int root) {
  // Structure: every path is a directed arc of its declared face with
  // degree-3 inner vertices, and no vertex is an endpoint of one path and
  // inner on another.
  for (const auto& p : x.paths()) {
    if (p.verts.size() < 2)
      return fail_report("structure", p.verts.empty() ? -1 : p.verts.front());
    std::set<int> seen;
    for (int v : p.verts) {
      if (!g.has_vertex(v)) return fail_report("structure", v);
      if (!seen.insert(v).second) return fail_report("structure", v);
    }
    for (size_t i = 0; i + 1 < p.verts.size(); ++i) {
      int u = p.verts[i], v = p.verts[i + 1];
      if (!g.adjacent(u, v) || g.face_of_directed(u, v) != p.face)
        return fail_report("structure", u, norm_edge(u, v));
    }
    for (size_t i = 1; i + 1 < p.verts.size(); ++i)
      if (g.degree(p.verts[i]) != 3) return fail_report("structure", p.verts[i]);
  }
  for (int v : x.vertices())
    if (x.is_endvertex(v) && x.is_inner(v)) return fail_report("structure", v);

  // D1: an edge on two paths joins two degree-3 vertices (the root is
  // exempt from the degree requirement).
  for (const auto& p : x.paths()) {
    for (size_t i = 0; i + 1 < p.verts.size(); ++i) {
      int u = p.verts[i], v = p.verts[i + 1];
      if (x.edge_multiplicity(u, v) < 2) continue;
      for (int w : {u, v}) {
        if (w == root) continue;
        if (g.degree(w) != 3) return fail_report("D1", w, norm_edge(u, v));
      }
    }
  }

  for (int v : g.vertex_ids()) {
    if (v == root) continue;
    if (g.degree(v) == 2 && x.outdegree(v) != 0) return fail_report("D2", v);
  }
  for (int v : g.vertex_ids()) {
    if (v == root) continue;
    if (g.degree(v) == 3 && (x.indegree(v) != 0 || x.outdegree(v) != 0))
      return fail_report("D3", v);
  }
  for (int v : g.vertex_ids()) {
    if (v == root) continue;
    if (g.degree(v) == 4 && x.indegree(v) > 0 && x.outdegree(v) != 3)
      return fail_report("D4", v);
  }
  for (int v : g.vertex_ids()) {
    if (v == root) continue;
    if (g.degree(v) >= 5 && x.indegree(v) != 0) return fail_report("D5", v);
  }
  return NiceReport{};
}

[[noreturn]] void fail_precondition(const std::string& tag,
                                    const std::string& witness,
                                    const std::string& message) {
  throw Error(Error::Code::kPreconditionViolated, tag, witness,
              "build_P precondition [" + tag + "]: " + message);
}

}  // namespace

NiceReport check_nice(const PlanarGraph& g, const PathSystem& x) {
  return check_conditions(g, x, -1);
}

NiceReport check_almost_nice(const PlanarGraph& g, const PathSystem& x, int root) {
  require_param(g.has_vertex(root), "almost-nice root must be a vertex of the graph");
  return check_conditions(g, x, root);
}

PathSystem build_P(const PlanarGraph& g) {
  if (g.components().size() != 1)
    fail_precondition("connected", "", "graph must be connected");
  for (int v : g.vertex_ids())
    if (g.degree(v) < 2)
      fail_precondition("min_degree", "vertex " + std::to_string(v),
                        "vertex " + std::to_string(v) + " has degree " +
                            std::to_string(g.degree(v)) + ", need >= 2");

  const auto& faces = g.faces();
  for (size_t fi = 0; fi < faces.size(); ++fi) {
    const auto& walk = faces[fi].walk;
    const int len = faces[fi].length();
    std::string face_witness = "face " + std::to_string(fi);
    std::set<int> distinct(walk.begin(), walk.end());
    if (static_cast<int>(distinct.size()) != len)
      fail_precondition("face_simple", face_witness,
                        face_witness + " repeats a vertex");
    for (int a = 0; a < len; ++a) {
      for (int b = a + 2; b < len; ++b) {
        if (a == 0 && b == len - 1) continue;  // cyclically consecutive
        if (g.adjacent(walk[static_cast<size_t>(a)], walk[static_cast<size_t>(b)]))
          fail_precondition("face_chordless", face_witness,
                            face_witness + " has chord {" +
                                std::to_string(walk[static_cast<size_t>(a)]) + "," +
                                std::to_string(walk[static_cast<size_t>(b)]) + "}");
      }
    }
    if (len > 9)
      fail_precondition("face_bound", face_witness,
                        face_witness + " has length " + std::to_string(len) +
                            ", need <= 9");
  }

  PathSystem p;
  for (size_t fi = 0; fi < faces.size(); ++fi) {
    const auto& walk = faces[fi].walk;
    const int len = faces[fi].length();
    std::vector<int> cuts;
    for (int i = 0; i < len; ++i)
      if (g.degree(walk[static_cast<size_t>(i)]) != 3) cuts.push_back(i);
    if (cuts.size() < 2) continue;
    for (size_t c = 0; c < cuts.size(); ++c) {
      int from = cuts[c];
      int to = cuts[(c + 1) % cuts.size()];
      std::vector<int> verts{walk[static_cast<size_t>(from)]};
      for (int i = (from + 1) % len;; i = (i + 1) % len) {
        verts.push_back(walk[static_cast<size_t>(i)]);
        if (i == to) break;
      }
      if (g.degree(verts.front()) >= 4 &&
          (g.degree(verts.back()) == 2 || g.degree(verts.back()) == 4))
        p.add(FacialPath{static_cast<int>(fi), std::move(verts)});
    }
  }

  // Arcs strictly between two cuts of a <= 9-cycle have <= 8 edges, and an
  // edge can be traversed by at most its two incident faces, oppositely.
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> directed_uses;
  for (const auto& q : p.paths()) {
    require_assumption(q.length() <= 8, "path_length",
                       "arc with " + std::to_string(q.length()) + " edges");
    for (size_t i = 0; i + 1 < q.verts.size(); ++i)
      directed_uses[norm_edge(q.verts[i], q.verts[i + 1])].push_back(
          {q.verts[i], q.verts[i + 1]});
  }
  for (const auto& [e, uses] : directed_uses) {
    std::string witness =
        "edge {" + std::to_string(e.first) + "," + std::to_string(e.second) + "}";
    require_assumption(uses.size() <= 2, "edge_multiplicity",
                       witness + " on " + std::to_string(uses.size()) + " arcs");
    if (uses.size() == 2)
      require_assumption(
          uses[0].first == uses[1].second && uses[0].second == uses[1].first,
          "edge_multiplicity", witness + " traversed twice in the same direction");
  }
  return p;
}

PathSystem build_X0(const PlanarGraph& g, const PathSystem& p) {
  // Arcs of p ending at each vertex, in canonical (face-ascending) order.
  std::map<int, std::vector<const FacialPath*>> by_in;
  for (const auto& q : p.paths()) by_in[q.in_endvertex()].push_back(&q);
  auto arcs_into = [&](int v) -> const std::vector<const FacialPath*>& {
    static const std::vector<const FacialPath*> none;
    auto it = by_in.find(v);
    return it == by_in.end() ? none : it->second;
  };

  PathSystem x0;
  // Step 1: both retained arcs into every degree-2 vertex.
  for (int v : g.vertex_ids()) {
    if (g.degree(v) != 2) continue;
    for (const FacialPath* q : arcs_into(v)) {
      require_assumption(!x0.occupied(*q), "deg2_occupied",
                         "arc into vertex " + std::to_string(v) +
                             " already blocked at an end edge");
      x0.add(*q);
    }
    require_assumption(x0.indegree(v) == 2, "deg2_indeg",
                       "degree-2 vertex " + std::to_string(v) + " has " +
                           std::to_string(x0.indegree(v)) +
                           " incoming arcs, need 2");
  }

  // Step 2: grow until stable. Adding an arc can raise its out-endvertex's
  // out-degree to exactly 3 and thereby make that vertex eligible, so sweep
  // to a fixed point.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v : g.vertex_ids()) {
      if (g.degree(v) != 4 || x0.outdegree(v) != 3) continue;
      for (const FacialPath* q : arcs_into(v)) {
        if (x0.contains(*q) || x0.occupied(*q)) continue;
        x0.add(*q);
        changed = true;
      }
    }
  }

  NiceReport r = check_nice(g, x0);
  require_assumption(r.ok, "x0_nice",
                     "condition " + r.failed_condition + " at vertex " +
                         std::to_string(r.witness_vertex));
  require_assumption(x0.is_acyclic(), "x0_acyclic", "");
  return x0;
}

}  // namespace planarsplit
