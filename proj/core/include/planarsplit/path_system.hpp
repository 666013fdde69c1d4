#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "planarsplit/graph.hpp"

namespace planarsplit {

// A directed path along the counterclockwise boundary walk of one face.
// verts[0] is the out-endvertex, verts.back() the in-endvertex; consecutive
// entries are the directed edges the walk traverses in order. The (face,
// vertex sequence) ordering below is the canonical order PathSystem keeps
// its paths in.
struct FacialPath {
  int face = -1;
  std::vector<int> verts;

  int length() const { return static_cast<int>(verts.size()) - 1; }
  int out_endvertex() const { return verts.front(); }
  int in_endvertex() const { return verts.back(); }
  // True iff {u, v} is one of the path's edges (either direction).
  bool has_edge(int u, int v) const;

  friend auto operator<=>(const FacialPath&, const FacialPath&) = default;
};

// A deduplicated set of facial paths in canonical order, with the
// bookkeeping the coloring machinery queries: endpoint counts, edge
// coverage, and the reachability relation induced by "some path leads from
// its out-endvertex to its in-endvertex". Paths are only ever added.
class PathSystem {
 public:
  PathSystem() = default;

  // Inserts p at its canonical position; returns false (and changes
  // nothing) if it is already present. Rejects paths with fewer than two
  // vertices or a repeated vertex.
  bool add(FacialPath p);
  bool contains(const FacialPath& p) const;

  const std::vector<FacialPath>& paths() const { return paths_; }
  int size() const { return static_cast<int>(paths_.size()); }
  bool empty() const { return paths_.empty(); }

  // Number of paths with in-endvertex / out-endvertex v.
  int indegree(int v) const;
  int outdegree(int v) const;
  // Whether v lies strictly inside some path / is an endvertex of some path.
  bool is_inner(int v) const;
  bool is_endvertex(int v) const;
  // Sorted distinct vertices appearing on any path.
  std::vector<int> vertices() const;

  // Number of paths covering edge {u, v} (either orientation).
  int edge_multiplicity(int u, int v) const;
  bool covers_edge(int u, int v) const { return edge_multiplicity(u, v) > 0; }
  // Indices into paths() of the paths covering {u, v}, ascending.
  std::vector<int> paths_covering(int u, int v) const;
  // Indices into paths() of the paths with in-/out-endvertex v, ascending.
  std::vector<int> paths_into(int v) const;
  std::vector<int> paths_out_of(int v) const;

  // True iff p's first or last edge lies on some path of the system. A path
  // already present is occupied by its own edges; sharing only middle edges
  // does not count.
  bool occupied(const FacialPath& p) const;

  // True iff a chain of one or more paths leads from `from` to `to`: the
  // first path's out-endvertex is `from`, each later path starts where the
  // previous one ended, and the last path's in-endvertex is `to`. In
  // particular reaches(v, v) detects a cycle through v.
  bool reaches(int from, int to) const;
  // No vertex reaches itself.
  bool is_acyclic() const;
  // The paths whose out-endvertex is w or reachable from w.
  PathSystem forward_closure(int w) const;

  // One line per path in canonical order:
  //   face:<id> out:<v0> <inner vertices space-separated> in:<vk>\n
  std::string dump() const;

  bool operator==(const PathSystem& o) const { return paths_ == o.paths_; }

 private:
  std::vector<FacialPath> paths_;
  // Derived counters, keyed by vertex id / normalized edge.
  std::map<int, int> indeg_, outdeg_, inner_count_, end_count_;
  std::map<std::pair<int, int>, int> edge_count_;
};

// Result of check_nice / check_almost_nice. failed_condition is "" on
// success, "structure" for a malformed path or a vertex that is an endpoint
// of one path and inner on another, or the first violated degree condition:
//   D1  an edge lying on two paths joins two degree-3 vertices
//   D2  degree-2 vertices have out-degree 0
//   D3  degree-3 vertices have in- and out-degree 0
//   D4  a degree-4 vertex with positive in-degree has out-degree 3
//   D5  vertices of degree >= 5 have in-degree 0
struct NiceReport {
  bool ok = true;
  std::string failed_condition;
  int witness_vertex = -1;
  std::pair<int, int> witness_edge{-1, -1};
};

// Checks that x is a well-formed system of facial paths of g satisfying
// D1-D5. check_almost_nice relaxes the conditions at one root vertex:
// D2-D5 are not enforced there, and a shared edge needs a degree-3
// endpoint only where that endpoint is not the root.
NiceReport check_nice(const PlanarGraph& g, const PathSystem& x);
NiceReport check_almost_nice(const PlanarGraph& g, const PathSystem& x, int root);

// Builds the base path system: each face whose boundary walk has at least
// two vertices of degree != 3 ("cuts") splits into arcs between cyclically
// consecutive cuts, and an arc is retained iff its out-endvertex has degree
// >= 4 and its in-endvertex has degree 2 or 4. Requires a connected graph
// of minimum degree >= 2 all of whose faces are chordless simple cycles of
// length <= 9; violations throw PreconditionViolated tagged "connected",
// "min_degree", "face_simple", "face_chordless" or "face_bound".
PathSystem build_P(const PlanarGraph& g);

// Builds the start system the coloring argument grows configurations from.
// Step 1 adds, per degree-2 vertex ascending, both retained arcs ending
// there (tag "deg2_indeg" if a degree-2 vertex does not receive exactly
// two). Step 2 repeats sweeps that add every unoccupied arc of p ending at
// a degree-4 vertex of current out-degree exactly 3, until nothing changes.
// The result is verified nice ("x0_nice") and acyclic ("x0_acyclic").
PathSystem build_X0(const PlanarGraph& g, const PathSystem& p);

}  // namespace planarsplit
