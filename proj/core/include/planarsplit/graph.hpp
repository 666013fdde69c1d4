#pragma once

#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "planarsplit/error.hpp"

namespace planarsplit {

// Distance / girth value for "no path" / "no cycle".
inline constexpr int kInfinity = std::numeric_limits<int>::max();

// One face of the embedding. `walk` lists the vertices of the closed
// boundary walk in order; walk[i] -> walk[i+1] (cyclically) are the directed
// edges of the walk, so walk.size() equals the number of directed edges on
// the face. An isolated vertex contributes a face with an empty walk, as
// does the empty graph.
struct Face {
  std::vector<int> walk;

  int length() const { return static_cast<int>(walk.size()); }
};

// A simple undirected graph embedded in the sphere, represented by a
// rotation system: for every vertex a cyclic counterclockwise order of its
// neighbors. Faces, girth and distances are derived on demand and cached.
//
// Values are immutable: mutators return a new graph. Cached data is computed
// lazily behind const accessors, so a single instance must not be shared
// across threads without external synchronization.
//
// Vertex ids are non-negative ints. Deleting vertices keeps the ids of the
// survivors, so colorings indexed by id stay valid across deletions.
class PlanarGraph {
 public:
  PlanarGraph() = default;

  // Builds a graph from explicit rotations. Each entry is (vertex id,
  // counterclockwise neighbor list). Rejects duplicate ids, unknown
  // neighbors, self-loops, repeated neighbors and asymmetric adjacency with
  // InconsistentRotation, and rotations that do not describe a sphere
  // embedding (per-component Euler check) with NotPlanar.
  static PlanarGraph from_rotation(
      const std::vector<std::pair<int, std::vector<int>>>& rotation);

  // Builds a graph from an edge list; vertex set is the union of endpoints.
  // Computes a planar embedding (the derived rotation is declared
  // counterclockwise). Throws NotPlanar if none exists, BadParameter for
  // self-loops, duplicate edges or negative ids.
  static PlanarGraph from_edges(const std::vector<std::pair<int, int>>& edges);

  // Same, with an explicit vertex set so isolated vertices are allowed.
  static PlanarGraph from_edges(const std::vector<int>& ids,
                                const std::vector<std::pair<int, int>>& edges);

  // -- basic accessors ------------------------------------------------------

  const std::vector<int>& vertex_ids() const { return ids_; }
  int num_vertices() const { return static_cast<int>(ids_.size()); }
  int num_edges() const { return num_edges_; }
  // Largest id ever used; ids are in [0, max_id()].
  int max_id() const { return max_id_; }
  bool has_vertex(int v) const {
    return v >= 0 && v <= max_id_ && alive_[static_cast<size_t>(v)];
  }
  int degree(int v) const;
  // Counterclockwise neighbor order.
  const std::vector<int>& neighbors(int v) const;
  bool adjacent(int u, int v) const;
  // Index of u in the rotation of v, or -1.
  int rotation_index(int v, int u) const;
  // Cyclic predecessor / successor of u in the rotation of v.
  int pred_neighbor(int v, int u) const;
  int succ_neighbor(int v, int u) const;

  // -- faces ----------------------------------------------------------------

  // All faces, in deterministic discovery order (scanning vertices
  // ascending, rotation positions ascending; isolated-vertex faces last).
  const std::vector<Face>& faces() const;
  // Face containing the directed edge u->v (the face whose walk traverses
  // u immediately followed by v). Throws UnknownVertex / BadParameter.
  int face_of_directed(int u, int v) const;

  // -- metrics --------------------------------------------------------------

  // Length of a shortest cycle, kInfinity for forests.
  int girth() const;
  // BFS distance, kInfinity if disconnected.
  int distance(int u, int v) const;
  // True iff distance(u, v) >= k; stops the BFS at depth k-1.
  bool distance_at_least(int u, int v, int k) const;
  // Connected components as sorted vertex lists, ordered by smallest id.
  std::vector<std::vector<int>> components() const;

  // -- mutation (value semantics) -------------------------------------------

  // Removes the given vertices and their incident edges. The cyclic order
  // of the remaining neighbors is preserved at every surviving vertex.
  PlanarGraph delete_vertices(const std::vector<int>& to_delete) const;

  // Inserts edge {u, v} inside the face with the given index, splitting it
  // in two. u and v must both lie on the face's walk (first occurrences are
  // used) and must not be adjacent yet. The new cycle through u and v has
  // length distance(u, v) + 1, so callers preserve a girth bound by only
  // connecting vertices at sufficient distance.
  PlanarGraph add_edge_in_face(int face_index, int u, int v) const;

  // Removes an existing edge (merging its two faces). Exact inverse of
  // add_edge_in_face: deleting the edge just inserted restores the previous
  // rotations verbatim.
  PlanarGraph remove_edge(int u, int v) const;

  // Drops cached faces / girth to free memory (e.g. before recursing).
  void purge_caches() const;

  // Exact structural equality: same alive set and identical rotation lists.
  bool operator==(const PlanarGraph& o) const {
    return max_id_ == o.max_id_ && alive_ == o.alive_ && rot_ == o.rot_;
  }

 private:
  void require_vertex(int v) const {
    if (!has_vertex(v)) {
      throw Error(Error::Code::kUnknownVertex,
                  "unknown vertex id " + std::to_string(v));
    }
  }
  void rebuild_ids();
  void invalidate_caches();
  void ensure_faces() const;
  // Validates symmetry/simplicity of rot_; used by from_rotation.
  void validate_rotation_structure() const;

  int max_id_ = -1;
  int num_edges_ = 0;
  std::vector<char> alive_;
  std::vector<int> ids_;
  std::vector<std::vector<int>> rot_;

  // Lazy caches.
  mutable bool faces_valid_ = false;
  mutable std::vector<Face> faces_;
  // face_at_[v][i] = face index of directed edge v -> rot_[v][i].
  mutable std::vector<std::vector<int>> face_at_;
  mutable bool girth_valid_ = false;
  mutable int girth_ = kInfinity;
};

// A graph bundled with named landmark vertices (e.g. the distinguished
// vertices of a generated family member), used by generators and the JSON
// graph format.
struct MarkedGraph {
  PlanarGraph graph;
  std::map<std::string, int> marks;
};

}  // namespace planarsplit
