#pragma once

#include <optional>
#include <string>
#include <vector>

#include "planarsplit/error.hpp"
#include "planarsplit/graph.hpp"

namespace planarsplit {

// Components of monochromatic subgraphs must be paths with at most this
// many edges for a coloring to count as good.
inline constexpr int kDefaultMaxPathLen = 14;

// Partial vertex coloring indexed by vertex id. Ids survive vertex
// deletions, so a coloring produced for a subgraph applies unchanged to any
// graph sharing those ids. Colors are non-negative ints.
class Coloring {
 public:
  Coloring() = default;

  bool has(int v) const;
  // Color of v; throws kUncoloredVertex when unset.
  int color(int v) const;
  void set(int v, int c);
  void unset(int v);
  int num_colored() const { return num_colored_; }
  // Ids with a color, ascending.
  std::vector<int> colored_ids() const;

  // Keeps only entries for vertices present in g.
  Coloring restricted_to(const PlanarGraph& g) const;

  bool operator==(const Coloring& other) const;

 private:
  std::vector<int> colors_;  // -1 = unset; grown on demand
  int num_colored_ = 0;
};

// Per-vertex color lists. Every assigned list has at least two distinct
// colors; vertices without a list are simply unassigned.
class ListAssignment {
 public:
  ListAssignment() = default;

  // Stores a list for v (sorted, deduplicated). Requires >= 2 distinct
  // colors, all non-negative.
  void set(int v, std::vector<int> colors);
  bool has(int v) const;
  // Sorted list of v; throws kPreconditionViolated when unset.
  const std::vector<int>& list(int v) const;
  // Ids with a list, ascending.
  std::vector<int> assigned_ids() const;
  // Throws kPreconditionViolated unless every vertex of g has a list.
  void require_covers(const PlanarGraph& g) const;

  // The same list for every vertex of g.
  static ListAssignment uniform(const PlanarGraph& g, std::vector<int> colors);

  bool operator==(const ListAssignment& other) const;

 private:
  std::vector<std::vector<int>> lists_;  // empty = unset
};

enum class MonoShape { kPath, kCycle, kOther };

// One connected component of a color class: the subgraph induced by the
// vertices of one color, split into connected pieces.
struct MonoComponent {
  int color = 0;
  std::vector<int> vertices;  // ascending
  int num_edges = 0;
  int max_degree = 0;  // degree within the component
  MonoShape shape = MonoShape::kPath;

  int order() const { return static_cast<int>(vertices.size()); }
};

// All monochromatic components of g under c, ordered by smallest vertex.
// Every vertex of g must be colored (kUncoloredVertex otherwise).
std::vector<MonoComponent> mono_components(const PlanarGraph& g, const Coloring& c);

struct GoodReport {
  bool good = true;
  std::string reason;  // empty when good
  std::optional<MonoComponent> violation;
};

// A coloring is good when every monochromatic component is a path with at
// most max_len edges. Requires a total coloring of g.
GoodReport is_good(const PlanarGraph& g, const Coloring& c, int max_len = kDefaultMaxPathLen);

// True when every colored vertex of g uses a color from its list; vertices
// of g must all be colored and covered by lists.
bool respects_lists(const PlanarGraph& g, const Coloring& c, const ListAssignment& lists);

struct ColoringMetrics {
  // Max number of same-colored neighbors over all vertices.
  int max_mono_degree = 0;
  // Max order (vertex count) of a monochromatic component.
  int max_component_order = 0;
  // Max order of a path contained in a monochromatic component. Exact;
  // components that are neither paths nor cycles are solved by dynamic
  // programming and must have at most 22 vertices (kBudgetExceeded beyond).
  int max_mono_path_order = 0;
};

ColoringMetrics coloring_metrics(const PlanarGraph& g, const Coloring& c);

}  // namespace planarsplit
