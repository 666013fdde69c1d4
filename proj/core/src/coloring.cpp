#include "planarsplit/coloring.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>

namespace planarsplit {

bool Coloring::has(int v) const {
  return v >= 0 && v < static_cast<int>(colors_.size()) && colors_[static_cast<size_t>(v)] >= 0;
}

int Coloring::color(int v) const {
  if (!has(v)) {
    throw Error(Error::Code::kUncoloredVertex,
                "vertex " + std::to_string(v) + " has no color");
  }
  return colors_[static_cast<size_t>(v)];
}

void Coloring::set(int v, int c) {
  require_param(v >= 0, "vertex ids must be non-negative");
  require_param(c >= 0, "colors must be non-negative");
  if (v >= static_cast<int>(colors_.size())) colors_.resize(static_cast<size_t>(v) + 1, -1);
  if (colors_[static_cast<size_t>(v)] < 0) ++num_colored_;
  colors_[static_cast<size_t>(v)] = c;
}

void Coloring::unset(int v) {
  if (has(v)) {
    colors_[static_cast<size_t>(v)] = -1;
    --num_colored_;
  }
}

std::vector<int> Coloring::colored_ids() const {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(num_colored_));
  for (int v = 0; v < static_cast<int>(colors_.size()); ++v) {
    if (colors_[static_cast<size_t>(v)] >= 0) out.push_back(v);
  }
  return out;
}

Coloring Coloring::restricted_to(const PlanarGraph& g) const {
  Coloring out;
  for (int v : g.vertex_ids()) {
    if (has(v)) out.set(v, color(v));
  }
  return out;
}

bool Coloring::operator==(const Coloring& other) const {
  if (num_colored_ != other.num_colored_) return false;
  size_t n = std::max(colors_.size(), other.colors_.size());
  for (size_t v = 0; v < n; ++v) {
    int a = v < colors_.size() ? colors_[v] : -1;
    int b = v < other.colors_.size() ? other.colors_[v] : -1;
    if (a != b) return false;
  }
  return true;
}

void ListAssignment::set(int v, std::vector<int> colors) {
  require_param(v >= 0, "vertex ids must be non-negative");
  for (int c : colors) require_param(c >= 0, "colors must be non-negative");
  std::sort(colors.begin(), colors.end());
  colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
  require_param(colors.size() >= 2,
                "list of vertex " + std::to_string(v) + " needs at least 2 distinct colors");
  if (v >= static_cast<int>(lists_.size())) lists_.resize(static_cast<size_t>(v) + 1);
  lists_[static_cast<size_t>(v)] = std::move(colors);
}

bool ListAssignment::has(int v) const {
  return v >= 0 && v < static_cast<int>(lists_.size()) && !lists_[static_cast<size_t>(v)].empty();
}

const std::vector<int>& ListAssignment::list(int v) const {
  require_precondition(has(v), "vertex " + std::to_string(v) + " has no color list");
  return lists_[static_cast<size_t>(v)];
}

std::vector<int> ListAssignment::assigned_ids() const {
  std::vector<int> out;
  for (int v = 0; v < static_cast<int>(lists_.size()); ++v) {
    if (!lists_[static_cast<size_t>(v)].empty()) out.push_back(v);
  }
  return out;
}

void ListAssignment::require_covers(const PlanarGraph& g) const {
  for (int v : g.vertex_ids()) {
    require_precondition(has(v), "vertex " + std::to_string(v) + " has no color list");
  }
}

ListAssignment ListAssignment::uniform(const PlanarGraph& g, std::vector<int> colors) {
  ListAssignment out;
  for (int v : g.vertex_ids()) out.set(v, colors);
  return out;
}

bool ListAssignment::operator==(const ListAssignment& other) const {
  size_t n = std::max(lists_.size(), other.lists_.size());
  static const std::vector<int> kEmpty;
  for (size_t v = 0; v < n; ++v) {
    const auto& a = v < lists_.size() ? lists_[v] : kEmpty;
    const auto& b = v < other.lists_.size() ? other.lists_[v] : kEmpty;
    if (a != b) return false;
  }
  return true;
}

std::vector<MonoComponent> mono_components(const PlanarGraph& g, const Coloring& c) {
  for (int v : g.vertex_ids()) c.color(v);  // throws on any uncolored vertex
  std::vector<MonoComponent> out;
  std::vector<char> seen(static_cast<size_t>(g.max_id() + 1), 0);
  for (int s : g.vertex_ids()) {
    if (seen[static_cast<size_t>(s)]) continue;
    MonoComponent comp;
    comp.color = c.color(s);
    long long half_edges = 0;
    std::deque<int> q{s};
    seen[static_cast<size_t>(s)] = 1;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      comp.vertices.push_back(x);
      int mono_deg = 0;
      for (int y : g.neighbors(x)) {
        if (c.color(y) != comp.color) continue;
        ++mono_deg;
        if (!seen[static_cast<size_t>(y)]) {
          seen[static_cast<size_t>(y)] = 1;
          q.push_back(y);
        }
      }
      half_edges += mono_deg;
      comp.max_degree = std::max(comp.max_degree, mono_deg);
    }
    std::sort(comp.vertices.begin(), comp.vertices.end());
    comp.num_edges = static_cast<int>(half_edges / 2);
    if (comp.max_degree <= 2 && comp.num_edges == comp.order() - 1) {
      comp.shape = MonoShape::kPath;
    } else if (comp.max_degree == 2 && comp.num_edges == comp.order()) {
      comp.shape = MonoShape::kCycle;
    } else {
      comp.shape = MonoShape::kOther;
    }
    out.push_back(std::move(comp));
  }
  return out;
}

GoodReport is_good(const PlanarGraph& g, const Coloring& c, int max_len) {
  require_param(max_len >= 0, "max_len must be non-negative");
  GoodReport report;
  for (MonoComponent& comp : mono_components(g, c)) {
    if (comp.shape == MonoShape::kCycle) {
      report.good = false;
      report.reason = "monochromatic component is a cycle";
    } else if (comp.shape == MonoShape::kOther) {
      report.good = false;
      report.reason = "monochromatic component has a vertex with 3 or more "
                      "same-colored neighbors";
    } else if (comp.num_edges > max_len) {
      report.good = false;
      report.reason = "monochromatic path has " + std::to_string(comp.num_edges) +
                      " edges (limit " + std::to_string(max_len) + ")";
    } else {
      continue;
    }
    report.violation = std::move(comp);
    return report;
  }
  return report;
}

bool respects_lists(const PlanarGraph& g, const Coloring& c, const ListAssignment& lists) {
  lists.require_covers(g);
  for (int v : g.vertex_ids()) {
    const auto& l = lists.list(v);
    if (!std::binary_search(l.begin(), l.end(), c.color(v))) return false;
  }
  return true;
}

namespace {

// Order of the longest path in the subgraph induced on `verts` (all edges of
// g inside the set are taken; caller guarantees they are one mono component,
// so the induced edges are exactly the component's edges). Exact bitmask
// dynamic program; dp[mask] holds the set of possible path endpoints among
// colorings of `mask` as a path.
int longest_path_order(const PlanarGraph& g, const std::vector<int>& verts) {
  const int k = static_cast<int>(verts.size());
  if (k > 22) {
    throw Error(Error::Code::kBudgetExceeded,
                "longest-path search limited to components with at most 22 vertices, got " +
                    std::to_string(k));
  }
  std::vector<uint32_t> adj(static_cast<size_t>(k), 0);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (g.adjacent(verts[static_cast<size_t>(i)], verts[static_cast<size_t>(j)])) {
        adj[static_cast<size_t>(i)] |= 1u << j;
        adj[static_cast<size_t>(j)] |= 1u << i;
      }
    }
  }
  std::vector<uint32_t> dp(static_cast<size_t>(1) << k, 0);
  for (int i = 0; i < k; ++i) dp[static_cast<size_t>(1) << i] = 1u << i;
  int best = 1;
  for (uint32_t mask = 1; mask < (1u << k); ++mask) {
    uint32_t ends = dp[mask];
    if (!ends) continue;
    best = std::max(best, static_cast<int>(__builtin_popcount(mask)));
    while (ends) {
      int j = __builtin_ctz(ends);
      ends &= ends - 1;
      uint32_t ext = adj[static_cast<size_t>(j)] & ~mask;
      while (ext) {
        int b = __builtin_ctz(ext);
        ext &= ext - 1;
        dp[mask | (1u << b)] |= 1u << b;
      }
    }
  }
  return best;
}

}  // namespace

ColoringMetrics coloring_metrics(const PlanarGraph& g, const Coloring& c) {
  ColoringMetrics m;
  for (const MonoComponent& comp : mono_components(g, c)) {
    m.max_mono_degree = std::max(m.max_mono_degree, comp.max_degree);
    m.max_component_order = std::max(m.max_component_order, comp.order());
    int path_order;
    switch (comp.shape) {
      case MonoShape::kPath:
      case MonoShape::kCycle:
        path_order = comp.order();
        break;
      case MonoShape::kOther:
        path_order = longest_path_order(g, comp.vertices);
        break;
    }
    m.max_mono_path_order = std::max(m.max_mono_path_order, path_order);
  }
  return m;
}

}  // namespace planarsplit
