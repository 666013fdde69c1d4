#pragma once

#include <cstdint>
#include <vector>

#include "planarsplit/graph.hpp"

namespace planarsplit {

// Cycle 0-1-...-(n-1)-0, n >= 3.
PlanarGraph cycle(int n);

// rows x cols patch of hexagonal cells (honeycomb); girth 6, rows*cols + 1
// faces.
PlanarGraph hex_patch(int rows, int cols);

// Path v1..vt (ids 0..t-1) with an apex u (id t) over the odd positions
// and an apex w (id t+1) over the even positions; marks "u" and "w".
// t >= 2.
MarkedGraph gadget_A(int t);

// gadget_A plus, for every neighbor v of u, a fresh copy of gadget_A whose
// u is identified with v and whose w is identified with w.
MarkedGraph gadget_B(int t);

struct BtStructure {
  PlanarGraph graph;
  int u = -1;
  int w = -1;
  // The base path and one path per copy, each on t vertices.
  std::vector<std::vector<int>> t_paths;
};
BtStructure gadget_B_structure(int t);

struct GadgetLemmaReport {
  bool holds = false;
  long long colorings_checked = 0;
  // When the claim fails: one color (0/1) per vertex id.
  std::vector<int> counterexample;
};

// Exhaustively checks, over all 2-colorings of gadget_B(t): whenever u and
// w share a color c, either some t-vertex path of the structure is
// monochromatic, or some neighbor of w has color c, or some c-colored
// neighbor v of u has a further c-colored neighbor besides u. Supported
// for t <= 6 (kBudgetExceeded beyond).
GadgetLemmaReport verify_gadget_lemma(int t);

// Recursive family: member 2 is the five-cycle; member t hangs two
// gadget_B(t) copies on every edge {x, y} of member t-1, one with (u, w)
// identified to (x, y) and one to (y, x). Vertex ids of member t-1 are
// preserved in member t. Supported for t in [2, 5].
PlanarGraph lower_bound_G(int t);

// 50-vertex planar graph of girth 5 on which every 2-coloring has a
// monochromatic 3-vertex path: a five-cycle where each edge {x, y}
// carries apex vertices x1..x3 (adjacent to x), y1..y3 (adjacent to y)
// and a path w1-w2-w3 with wi adjacent to xi and yi. Marks name the
// vertices of the {0, 1}-edge gadget. The defining property is certified
// once per process against the exhaustive search
// (kReconstructionUnavailable on mismatch).
MarkedGraph girth5_example();

// Random planar graph of girth exactly 6 with at least n vertices: random
// edge-connected growth of hexagonal cells, then random chords inserted
// into faces between vertices at distance >= 5. Deterministic per seed.
PlanarGraph random_planar_girth6(int n, uint64_t seed);

}  // namespace planarsplit
