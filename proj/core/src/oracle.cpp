#include "planarsplit/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <string>
#include <vector>

namespace planarsplit {

long long default_node_budget() {
  if (const char* env = std::getenv("PLANARSPLIT_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 100'000'000LL;
}

namespace {

// True when a simple path of `need` vertices of color c starts at v (v
// itself already known to have color c and to be unused).
bool mono_path_from(const PlanarGraph& g, const std::vector<int>& col, std::vector<char>& used,
                    int v, int c, int need) {
  if (need <= 1) return true;
  used[static_cast<size_t>(v)] = 1;
  for (int y : g.neighbors(v)) {
    if (col[static_cast<size_t>(y)] == c && !used[static_cast<size_t>(y)]) {
      if (mono_path_from(g, col, used, y, c, need - 1)) {
        used[static_cast<size_t>(v)] = 0;
        return true;
      }
    }
  }
  used[static_cast<size_t>(v)] = 0;
  return false;
}

void validate_property(const OracleProperty& prop) {
  switch (prop.kind) {
    case OracleProperty::Kind::kGood:
      require_param(prop.bound >= 0, "good() needs max_len >= 0");
      break;
    case OracleProperty::Kind::kPkFree:
      require_param(prop.bound >= 2, "pk_free() needs k >= 2");
      break;
    case OracleProperty::Kind::kFragmented:
      require_param(prop.bound >= 1, "fragmented() needs k >= 1");
      break;
    case OracleProperty::Kind::kDefective:
      require_param(prop.bound >= 0, "defective() needs d >= 0");
      break;
  }
}

}  // namespace

bool OracleProperty::holds_for(const PlanarGraph& g, const Coloring& c) const {
  validate_property(*this);
  switch (kind) {
    case Kind::kGood:
      return is_good(g, c, bound).good;
    case Kind::kFragmented: {
      for (const auto& comp : mono_components(g, c)) {
        if (comp.order() > bound) return false;
      }
      return true;
    }
    case Kind::kDefective: {
      for (const auto& comp : mono_components(g, c)) {
        if (comp.max_degree > bound) return false;
      }
      return true;
    }
    case Kind::kPkFree: {
      std::vector<int> col(static_cast<size_t>(g.max_id() + 1), -1);
      for (int v : g.vertex_ids()) col[static_cast<size_t>(v)] = c.color(v);
      std::vector<char> used(static_cast<size_t>(g.max_id() + 1), 0);
      for (int v : g.vertex_ids()) {
        if (mono_path_from(g, col, used, v, col[static_cast<size_t>(v)], bound)) return false;
      }
      return true;
    }
  }
  return false;  // unreachable
}

namespace {

struct Engine {
  const PlanarGraph& g;
  const ListAssignment& lists;
  OracleProperty prop;
  bool prune;
  long long budget;
  bool symmetry = false;
  bool use_masks = false;

  std::vector<int> order;
  std::vector<int> col;                      // by id, -1 = uncolored
  std::vector<uint8_t> allowed;              // by id, bit i = list position i usable
  std::vector<std::pair<int, int>> trail;    // (vertex, cleared bit)
  mutable std::vector<char> scratch_used;
  SearchStats stats;
  std::optional<Coloring> witness;

  Engine(const PlanarGraph& graph, const ListAssignment& l, const OracleProperty& p,
         const OracleOptions& opts)
      : g(graph), lists(l), prop(p), prune(opts.prune) {
    budget = opts.node_budget > 0 ? opts.node_budget : default_node_budget();
    order = g.vertex_ids();
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      int da = g.degree(a), db = g.degree(b);
      return da != db ? da > db : a < b;
    });
    col.assign(static_cast<size_t>(g.max_id() + 1), -1);
    scratch_used.assign(static_cast<size_t>(g.max_id() + 1), 0);

    if (!order.empty()) {
      const auto& first = lists.list(order[0]);
      symmetry = first.size() == 2;
      for (int v : order) {
        if (!(lists.list(v) == first)) {
          symmetry = false;
          break;
        }
      }
    }
    if (prune && prop.kind == OracleProperty::Kind::kPkFree && prop.bound == 3) {
      use_masks = true;
      allowed.assign(static_cast<size_t>(g.max_id() + 1), 0);
      for (int v : order) {
        size_t sz = lists.list(v).size();
        if (sz > 8) {
          use_masks = false;
          break;
        }
        allowed[static_cast<size_t>(v)] = static_cast<uint8_t>((1u << sz) - 1);
      }
    }
  }

  int mono_degree(int v, int c) const {
    int d = 0;
    for (int y : g.neighbors(v)) {
      if (col[static_cast<size_t>(y)] == c) ++d;
    }
    return d;
  }

  // Collects the monochromatic component of v among currently colored
  // vertices. Returns false on any violation detectable from the component
  // alone (used by kGood).
  bool incremental_violation(int v) const {
    const int c = col[static_cast<size_t>(v)];
    switch (prop.kind) {
      case OracleProperty::Kind::kDefective: {
        if (mono_degree(v, c) > prop.bound) return true;
        for (int y : g.neighbors(v)) {
          if (col[static_cast<size_t>(y)] == c && mono_degree(y, c) > prop.bound) return true;
        }
        return false;
      }
      case OracleProperty::Kind::kGood:
      case OracleProperty::Kind::kFragmented:
      case OracleProperty::Kind::kPkFree: {
        // BFS the component of v.
        std::vector<int> comp;
        std::deque<int> q{v};
        scratch_used[static_cast<size_t>(v)] = 1;
        long long half_edges = 0;
        int max_deg = 0;
        while (!q.empty()) {
          int x = q.front();
          q.pop_front();
          comp.push_back(x);
          int d = 0;
          for (int y : g.neighbors(x)) {
            if (col[static_cast<size_t>(y)] != c) continue;
            ++d;
            if (!scratch_used[static_cast<size_t>(y)]) {
              scratch_used[static_cast<size_t>(y)] = 1;
              q.push_back(y);
            }
          }
          half_edges += d;
          max_deg = std::max(max_deg, d);
        }
        for (int x : comp) scratch_used[static_cast<size_t>(x)] = 0;
        const int edges = static_cast<int>(half_edges / 2);
        const int n = static_cast<int>(comp.size());
        if (prop.kind == OracleProperty::Kind::kFragmented) return n > prop.bound;
        if (prop.kind == OracleProperty::Kind::kGood) {
          return max_deg >= 3 || edges >= n || edges > prop.bound;
        }
        // kPkFree: a new path on `bound` vertices must live in this
        // component; search from every possible endpoint.
        if (n < prop.bound) return false;
        for (int x : comp) {
          if (mono_path_from(g, col, scratch_used, x, c, prop.bound)) return true;
        }
        return false;
      }
    }
    return false;  // unreachable
  }

  // After v got color c, every same-colored edge {v, x} forbids c at all
  // other neighbors of v and of x (a third c would make a 3-vertex path).
  // Returns false when some vertex runs out of allowed colors.
  bool propagate(int v) {
    const int c = col[static_cast<size_t>(v)];
    for (int x : g.neighbors(v)) {
      if (col[static_cast<size_t>(x)] != c) continue;
      for (int z : {v, x}) {
        for (int y : g.neighbors(z)) {
          if (col[static_cast<size_t>(y)] != -1) continue;
          const auto& list = lists.list(y);
          auto it = std::lower_bound(list.begin(), list.end(), c);
          if (it == list.end() || *it != c) continue;
          const int bit = static_cast<int>(it - list.begin());
          uint8_t& mask = allowed[static_cast<size_t>(y)];
          if (!((mask >> bit) & 1)) continue;
          mask = static_cast<uint8_t>(mask & ~(1u << bit));
          trail.push_back({y, bit});
          if (mask == 0) return false;
        }
      }
    }
    return true;
  }

  void undo_to(size_t mark) {
    while (trail.size() > mark) {
      auto [y, bit] = trail.back();
      trail.pop_back();
      allowed[static_cast<size_t>(y)] =
          static_cast<uint8_t>(allowed[static_cast<size_t>(y)] | (1u << bit));
    }
  }

  bool search(size_t depth) {
    if (depth == order.size()) {
      Coloring out;
      for (int v : order) out.set(v, col[static_cast<size_t>(v)]);
      if (!prune && !prop.holds_for(g, out)) return false;
      witness = std::move(out);
      return true;
    }
    const int v = order[depth];
    const auto& list = lists.list(v);
    for (size_t i = 0; i < list.size(); ++i) {
      if (symmetry && depth == 0 && i > 0) break;
      if (use_masks && !((allowed[static_cast<size_t>(v)] >> i) & 1)) continue;
      ++stats.nodes;
      if (stats.nodes > budget) {
        throw Error(Error::Code::kBudgetExceeded,
                    "coloring search stopped after " + std::to_string(budget) + " nodes");
      }
      col[static_cast<size_t>(v)] = list[i];
      const size_t mark = trail.size();
      bool ok = true;
      if (prune) {
        ok = !incremental_violation(v);
        if (ok && use_masks) ok = propagate(v);
      }
      if (ok && search(depth + 1)) return true;
      undo_to(mark);
      col[static_cast<size_t>(v)] = -1;
    }
    return false;
  }
};

}  // namespace

OracleResult oracle_search(const PlanarGraph& g, const ListAssignment& lists,
                           const OracleQuery& query, const OracleOptions& opts) {
  validate_property(query.property);
  lists.require_covers(g);
  Engine engine(g, lists, query.property, opts);
  OracleResult result;
  result.satisfiable = engine.search(0);
  result.witness = std::move(engine.witness);
  result.stats = engine.stats;
  return result;
}

}  // namespace planarsplit
