#pragma once

#include <cstdint>
#include <optional>

#include "planarsplit/coloring.hpp"
#include "planarsplit/graph.hpp"

namespace planarsplit {

// Property a list coloring can be tested for. `bound` is the parameter of
// the family: good(max_len) accepts colorings whose monochromatic
// components are paths with at most max_len edges; pk_free(k) forbids a
// monochromatic path on k vertices; fragmented(k) caps every monochromatic
// component at k vertices; defective(d) allows every vertex at most d
// same-colored neighbors.
struct OracleProperty {
  enum class Kind { kGood, kPkFree, kFragmented, kDefective };

  Kind kind = Kind::kGood;
  int bound = kDefaultMaxPathLen;

  static OracleProperty good(int max_len = kDefaultMaxPathLen) {
    return {Kind::kGood, max_len};
  }
  static OracleProperty pk_free(int k) { return {Kind::kPkFree, k}; }
  static OracleProperty fragmented(int k) { return {Kind::kFragmented, k}; }
  static OracleProperty defective(int d) { return {Kind::kDefective, d}; }

  // True when `c` (total on g) has the property; used by the unpruned
  // search and by tests as an independent check.
  bool holds_for(const PlanarGraph& g, const Coloring& c) const;
};

// kExists asks for one coloring with the property. kForallFail asserts
// that NO list coloring has the property (e.g. a lower-bound instance where
// every coloring contains a forbidden pattern): the same search runs, a
// witness now refutes the claim and an exhausted search confirms it.
struct OracleQuery {
  OracleProperty property;
  enum class Mode { kExists, kForallFail } mode = Mode::kExists;
};

struct SearchStats {
  long long nodes = 0;  // assignments tried
};

struct OracleOptions {
  // <= 0 resolves to the PLANARSPLIT_BUDGET environment variable, or 1e8.
  long long node_budget = 0;
  // With pruning off, full colorings are enumerated and checked whole; the
  // first witness found is identical either way, which tests exploit.
  bool prune = true;
};

struct OracleResult {
  bool satisfiable = false;
  // The first satisfying coloring in search order, when satisfiable.
  std::optional<Coloring> witness;
  SearchStats stats;
};

// Exhaustive depth-first search over all list colorings of g, in a fixed
// order (vertices by descending degree, ties by ascending id; colors
// ascending). Throws kBudgetExceeded when the node budget runs out before
// the search is decided.
OracleResult oracle_search(const PlanarGraph& g, const ListAssignment& lists,
                           const OracleQuery& query, const OracleOptions& opts = {});

long long default_node_budget();

}  // namespace planarsplit
