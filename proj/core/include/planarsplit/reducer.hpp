#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "planarsplit/coloring.hpp"
#include "planarsplit/graph.hpp"
#include "planarsplit/path_system.hpp"

namespace planarsplit {

// Counters kept while solving. The solver re-validates its own invariants as
// it goes; each validation bumps a *_checks counter and any failure bumps the
// matching *_violations counter immediately before the error is thrown, so a
// run that finishes cleanly proves the violation counts stayed at zero.
struct SolveAudit {
  long long x0_checks = 0;          // path systems built and validated
  long long x0_violations = 0;
  long long config_checks = 0;      // configurations built and validated
  long long config_violations = 0;
  long long config_x1 = 0;          // configurations by kind
  long long config_x2 = 0;
  long long config_x3 = 0;
  long long config_x4 = 0;
  long long charge_checks = 0;      // charge maps validated
  long long charge_violations = 0;
  long long face_audits = 0;        // faces inspected after augmentation
  long long face_violations = 0;    // faces that were non-simple, chorded or long
  long long reductions_face_cycle = 0;
  long long reductions_deg2_path = 0;
  long long oracle_leaves = 0;      // subproblems finished by exhaustive search
  long long augment_edges = 0;      // edges added to make faces short
  long long strip_waves = 0;        // rounds of low-degree vertex removal
  long long extension_backtracks = 0;
};

// Adds edges inside faces between vertices at distance >= 5 until no face
// admits one, then audits every face (simple, chordless, length <= 9) into
// `audit` without throwing. Requires a connected graph with minimum degree 2.
// Distance-5 additions cannot create a cycle shorter than 6, so girth is
// preserved; it is not re-checked here. Inputs whose faces are already
// short come back unchanged.
PlanarGraph augment_to_maximal(const PlanarGraph& g, SolveAudit* audit = nullptr);

enum class ReductionKind {
  kFaceCycle,  // a face whose cycle has one degree-2 vertex, rest degree 3
  kDeg2Path,   // a facial path between two degree-2 vertices, inners degree 3
};

// A set of vertices that can be deleted now and list-colored later, once the
// rest of the graph is colored, without breaking properness or confinement.
struct ReductionPlan {
  ReductionKind kind = ReductionKind::kFaceCycle;
  int face = -1;  // index into faces() of the graph the plan was found in
  // kFaceCycle: the face cycle rotated to start at its degree-2 vertex.
  // kDeg2Path: the shorter arc between two cyclically consecutive degree-2
  // vertices of the face, both ends included.
  std::vector<int> verts;
  // outside[i] is the single neighbor of verts[i] that survives the
  // deletion, or -1 when there is none (only the degree-2 vertex of a face
  // cycle has none).
  std::vector<int> outside;
};

// Scans faces in index order and returns the first reduction found, or
// nothing when the graph has neither kind. Non-simple face walks are
// skipped.
std::optional<ReductionPlan> find_reduction(const PlanarGraph& g);

// Colors the deleted vertices of `plan`, given that every recorded outside
// neighbor is already colored in `c`. Each deleted vertex ends up differing
// from its outside neighbor, and a face cycle never becomes monochromatic,
// so monochromatic components do not cross the cut and stay paths.
void apply_reduction_extension(const ReductionPlan& plan, const ListAssignment& lists,
                               Coloring* c);

enum class ChargeCase {
  kCase1,  // the selected vertex has all its incident arcs outgoing
  kCase2,  // degree 4 with three outgoing arcs and one uncovered edge
};

struct DischargeResult {
  // Twice the charge of each vertex: 2*deg(v) - 6 + indeg(v) - outdeg(v),
  // doubled to stay integral. Sums to 2*(2*E - 3*N) <= -12.
  std::map<int, int> charge2;
  int sum2 = 0;
  int w0 = -1;  // smallest vertex of negative charge
  ChargeCase kind = ChargeCase::kCase1;
};

// Computes the charge map for a graph with the nice acyclic system `x0`
// built on it, validates the total, and classifies the smallest negatively
// charged vertex. Requires the invariants build_X0 guarantees.
DischargeResult discharge(const PlanarGraph& g, const PathSystem& x0,
                          SolveAudit* audit = nullptr);

enum class ConfigKind { kX1, kX2, kX3, kX4 };

// A deletable subsystem grown around the negatively charged vertex: its
// path system plus the derived vertex classes the coloring extension works
// on. `v1` is every vertex of the system; `w` the endvertices; `a` the
// vertices with (exactly one) neighbor outside; `e1` the induced edges not
// covered by any path; `b` the rest. `s[u]` holds, for each path ending at
// u, that path's second-to-last vertex — the neighborhood the extension
// rules steer around.
struct Configuration {
  ConfigKind kind = ConfigKind::kX1;
  int root = -1;
  PathSystem system;
  // kX3 only: the uncovered edge whose far end re-enters the system
  // immediately; kept out of e1 and made proper explicitly.
  std::optional<std::pair<int, int>> e_star;
  int u_star = -1;  // far end of e_star, -1 otherwise
  std::vector<int> v1;
  std::vector<int> w;
  std::vector<int> a;
  std::vector<std::pair<int, int>> e1;  // sorted (min,max) pairs
  std::vector<int> b;
  std::map<int, std::vector<int>> s;       // sorted, deduplicated
  std::map<int, int> outside_neighbor;     // defined exactly on `a`
};

// Builds the configuration for the discharge outcome `d` and validates the
// structural guarantees the extension depends on (niceness, acyclicity,
// endvertex degrees, e1 forming a matching away from the root, a single
// outside neighbor per vertex). Throws kAssumptionViolated on any failure.
Configuration build_configuration(const PlanarGraph& g, const PathSystem& x0,
                                  const DischargeResult& d, SolveAudit* audit = nullptr);

// Everything extend_coloring needs after the configuration's vertices are
// deleted: the configuration plus a snapshot of degrees and adjacency taken
// while the graph was intact.
struct ExtensionPlan {
  Configuration conf;
  std::map<int, int> degree;                  // degree in the intact graph
  std::map<int, std::vector<int>> neighbors;  // all neighbors in the intact graph
  std::map<int, std::vector<int>> inside;     // neighbors inside v1
};

ExtensionPlan make_extension_plan(const PlanarGraph& g, Configuration conf);

// Colors plan.conf.v1, given that every outside neighbor is already colored.
// Stages: vertices with an outside neighbor first, then the e1 matching,
// then the covered interior, then the remaining endvertices by priority
// rules with bounded backtracking over the genuinely free choices. Ends by
// checking that every new monochromatic component is a path of at most
// kDefaultMaxPathLen edges covered by at most two system paths and that all
// boundary edges are proper; failure to reach such a state throws
// kAssumptionViolated("extension_postcondition").
void extend_coloring(const ExtensionPlan& plan, const ListAssignment& lists, Coloring* c,
                     SolveAudit* audit = nullptr);

// Convenience overload: snapshots the plan from the intact graph first.
void extend_coloring(const PlanarGraph& g, const Configuration& conf,
                     const ListAssignment& lists, Coloring* c, SolveAudit* audit = nullptr);

struct SolveOptions {
  // Subproblems with at most this many vertices go to the exhaustive search.
  int oracle_threshold = 14;
  // Node budget for those searches; 0 means the oracle default.
  long long node_budget = 0;
  // When set, receives one line per solver action (strip/split/augment/
  // reduce/configuration/oracle_leaf).
  std::function<void(const std::string&)> trace;
  SolveAudit* audit = nullptr;
};

// Produces a coloring of g from `lists` in which every monochromatic
// component is a path with at most kDefaultMaxPathLen edges. Requires girth
// at least 6 (throws kGirthTooSmall) and a list of at least two colors on
// every vertex (throws kPreconditionViolated). The result is verified
// before it is returned.
Coloring solve(const PlanarGraph& g, const ListAssignment& lists,
               const SolveOptions& opts = {});

}  // namespace planarsplit
