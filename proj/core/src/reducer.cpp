#include "planarsplit/reducer.hpp"

#include <algorithm>
#include <iterator>
#include <set>
#include <variant>

#include "planarsplit/error.hpp"
#include "planarsplit/oracle.hpp"

namespace planarsplit {

namespace {

std::string vstr(int v) { return std::to_string(v); }

std::pair<int, int> norm_edge(int u, int v) {
  return {std::min(u, v), std::max(u, v)};
}

// Smallest color in v's list distinct from `avoid` (-1 = unconstrained).
int smallest_avoiding(const ListAssignment& lists, int v, int avoid = -1) {
  for (int col : lists.list(v)) {
    if (col != avoid) return col;
  }
  throw assumption_violated("list_too_small", "vertex " + vstr(v));
}

// Smallest color in v's list avoiding both constraints; -1 when none exists.
int smallest_avoiding2(const ListAssignment& lists, int v, int avoid_a, int avoid_b) {
  for (int col : lists.list(v)) {
    if (col != avoid_a && col != avoid_b) return col;
  }
  return -1;
}

bool walk_is_simple(const std::vector<int>& walk) {
  std::set<int> distinct(walk.begin(), walk.end());
  return distinct.size() == walk.size();
}

// True when the face walk has a chord: two non-consecutive walk positions
// whose vertices are adjacent.
bool walk_has_chord(const PlanarGraph& g, const std::vector<int>& walk) {
  const int m = static_cast<int>(walk.size());
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const bool consecutive = (j == i + 1) || (i == 0 && j == m - 1);
      if (consecutive) continue;
      if (g.adjacent(walk[i], walk[j])) return true;
    }
  }
  return false;
}

}  // namespace

PlanarGraph augment_to_maximal(const PlanarGraph& g, SolveAudit* audit) {
  if (g.num_vertices() > 0) {
    if (g.components().size() != 1) {
      throw Error(Error::Code::kPreconditionViolated, "connected", "",
                  "augment_to_maximal precondition [connected]: graph must be connected");
    }
    for (int v : g.vertex_ids()) {
      if (g.degree(v) < 2) {
        throw Error(Error::Code::kPreconditionViolated, "min_degree", vstr(v),
                    "augment_to_maximal precondition [min_degree]: vertex " + vstr(v) +
                        " has degree " + vstr(g.degree(v)));
      }
    }
  }

  PlanarGraph cur = g;
  // A face of length <= 9 keeps every vertex pair within walk distance 4,
  // so only longer faces can hold a pair at distance >= 5. The first pass
  // tries pairs five steps apart along the walk, the second every pair.
  auto add_one = [&cur](bool all_pairs) -> bool {
    const auto& faces = cur.faces();
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
      const auto& walk = faces[fi].walk;
      const int m = static_cast<int>(walk.size());
      if (m <= 9) continue;
      for (int i = 0; i < m; ++i) {
        const int j_end = all_pairs ? m : i + 6;
        for (int j = i + 5; j < j_end; ++j) {
          const int u = walk[i];
          const int v = walk[j % m];
          if (u == v || cur.adjacent(u, v)) continue;
          if (!cur.distance_at_least(u, v, 5)) continue;
          cur = cur.add_edge_in_face(static_cast<int>(fi), u, v);
          return true;
        }
      }
    }
    return false;
  };

  int added = 0;
  while (add_one(false)) ++added;
  while (add_one(true)) ++added;
  if (audit) {
    audit->augment_edges += added;
    for (const auto& face : cur.faces()) {
      ++audit->face_audits;
      const auto& walk = face.walk;
      const bool ok = static_cast<int>(walk.size()) <= 9 && walk_is_simple(walk) &&
                      !walk_has_chord(cur, walk);
      if (!ok) ++audit->face_violations;
    }
  }
  return cur;
}

std::optional<ReductionPlan> find_reduction(const PlanarGraph& g) {
  const auto& faces = g.faces();
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    const auto& walk = faces[fi].walk;
    const int m = static_cast<int>(walk.size());
    if (m < 3 || !walk_is_simple(walk)) continue;

    std::vector<int> cuts;  // walk positions whose vertex is not degree 3
    for (int i = 0; i < m; ++i) {
      if (g.degree(walk[i]) != 3) cuts.push_back(i);
    }

    if (cuts.size() == 1 && g.degree(walk[cuts[0]]) == 2) {
      // The whole face cycle goes: one degree-2 vertex, the rest degree 3.
      ReductionPlan plan;
      plan.kind = ReductionKind::kFaceCycle;
      plan.face = static_cast<int>(fi);
      const int start = cuts[0];
      for (int i = 0; i < m; ++i) plan.verts.push_back(walk[(start + i) % m]);
      plan.outside.assign(static_cast<std::size_t>(m), -1);
      const std::set<int> on_face(walk.begin(), walk.end());
      for (int i = 1; i < m; ++i) {
        const int v = plan.verts[i];
        const int prev = plan.verts[i - 1];
        const int next = plan.verts[(i + 1) % m];
        for (int nbr : g.neighbors(v)) {
          if (nbr != prev && nbr != next) plan.outside[static_cast<std::size_t>(i)] = nbr;
        }
        const int out = plan.outside[static_cast<std::size_t>(i)];
        require_assumption(out != -1 && !on_face.count(out), "reduction_outside",
                           "vertex " + vstr(v));
      }
      return plan;
    }

    if (cuts.size() >= 2) {
      // Shortest arc between cyclically consecutive degree-2 cuts, with only
      // degree-3 vertices strictly between them.
      const int t = static_cast<int>(cuts.size());
      int best_j = -1;
      int best_len = m + 1;
      for (int j = 0; j < t; ++j) {
        const int a = cuts[j];
        const int b = cuts[(j + 1) % t];
        if (g.degree(walk[a]) != 2 || g.degree(walk[b]) != 2) continue;
        const int arc = (b - a + m) % m;
        if (arc >= 1 && arc < best_len) {
          best_len = arc;
          best_j = j;
        }
      }
      if (best_j != -1) {
        const int a = cuts[best_j];
        ReductionPlan plan;
        plan.kind = ReductionKind::kDeg2Path;
        plan.face = static_cast<int>(fi);
        for (int i = 0; i <= best_len; ++i) plan.verts.push_back(walk[(a + i) % m]);
        const std::set<int> on_arc(plan.verts.begin(), plan.verts.end());
        for (int i = 0; i <= best_len; ++i) {
          const int v = plan.verts[static_cast<std::size_t>(i)];
          int out = -1;
          if (i == 0) {
            out = walk[(a - 1 + m) % m];
          } else if (i == best_len) {
            out = walk[(a + best_len + 1) % m];
          } else {
            const int prev = plan.verts[static_cast<std::size_t>(i - 1)];
            const int next = plan.verts[static_cast<std::size_t>(i + 1)];
            for (int nbr : g.neighbors(v)) {
              if (nbr != prev && nbr != next) out = nbr;
            }
          }
          require_assumption(out != -1 && !on_arc.count(out), "reduction_outside",
                             "vertex " + vstr(v));
          plan.outside.push_back(out);
        }
        return plan;
      }
    }
  }
  return std::nullopt;
}

void apply_reduction_extension(const ReductionPlan& plan, const ListAssignment& lists,
                               Coloring* c) {
  require_param(c != nullptr, "coloring must not be null");
  require_param(plan.verts.size() == plan.outside.size(),
                "plan vertex and outside lists must have equal length");
  const int n = static_cast<int>(plan.verts.size());
  for (int i = 0; i < n; ++i) {
    const int out = plan.outside[static_cast<std::size_t>(i)];
    if (out != -1) {
      require_assumption(c->has(out), "extension_precolor", "vertex " + vstr(out));
    }
  }

  if (plan.kind == ReductionKind::kFaceCycle) {
    for (int i = 1; i < n; ++i) {
      const int v = plan.verts[static_cast<std::size_t>(i)];
      const int out = plan.outside[static_cast<std::size_t>(i)];
      c->set(v, smallest_avoiding(lists, v, c->color(out)));
    }
    // The degree-2 vertex last: keep the cycle from going monochromatic.
    bool all_same = true;
    for (int i = 2; i < n; ++i) {
      all_same = all_same && c->color(plan.verts[static_cast<std::size_t>(i)]) ==
                                 c->color(plan.verts[1]);
    }
    const int avoid = (all_same && n >= 2) ? c->color(plan.verts[1]) : -1;
    c->set(plan.verts[0], smallest_avoiding(lists, plan.verts[0], avoid));
    bool mono = true;
    for (int i = 1; i < n; ++i) {
      mono = mono && c->color(plan.verts[static_cast<std::size_t>(i)]) == c->color(plan.verts[0]);
    }
    require_assumption(!mono, "reduction_confinement", "face " + vstr(plan.face));
  } else {
    for (int i = 0; i < n; ++i) {
      const int v = plan.verts[static_cast<std::size_t>(i)];
      const int out = plan.outside[static_cast<std::size_t>(i)];
      c->set(v, smallest_avoiding(lists, v, c->color(out)));
    }
  }

  // Confinement: every deleted vertex differs from its outside neighbor, so
  // the new monochromatic pieces are runs along the deleted cycle/arc; those
  // runs must stay short enough.
  for (int i = 0; i < n; ++i) {
    const int out = plan.outside[static_cast<std::size_t>(i)];
    if (out == -1) continue;
    require_assumption(c->color(plan.verts[static_cast<std::size_t>(i)]) != c->color(out),
                       "reduction_confinement", "vertex " + vstr(plan.verts[static_cast<std::size_t>(i)]));
  }
  const bool cyclic = plan.kind == ReductionKind::kFaceCycle;
  int run = 0;
  const int passes = cyclic ? 2 * n : n;  // double loop catches wrap-around runs
  for (int i = 1; i < passes; ++i) {
    const int v = plan.verts[static_cast<std::size_t>(i % n)];
    const int prev = plan.verts[static_cast<std::size_t>((i - 1) % n)];
    run = (c->color(v) == c->color(prev)) ? run + 1 : 0;
    require_assumption(run <= kDefaultMaxPathLen, "reduction_confinement",
                       "run through vertex " + vstr(v));
  }
}

DischargeResult discharge(const PlanarGraph& g, const PathSystem& x0, SolveAudit* audit) {
  auto fail = [audit](const char* tag, const std::string& witness) {
    if (audit) ++audit->charge_violations;
    throw assumption_violated(tag, witness);
  };
  if (audit) ++audit->charge_checks;

  DischargeResult r;
  for (int v : g.vertex_ids()) {  // ascending, so the first negative is the smallest
    const int ch = 2 * g.degree(v) - 6 + x0.indegree(v) - x0.outdegree(v);
    r.charge2[v] = ch;
    r.sum2 += ch;
    if (ch < 0 && r.w0 == -1) r.w0 = v;
  }
  const int expect = 2 * (2 * g.num_edges() - 3 * g.num_vertices());
  if (r.sum2 != expect) {
    fail("charge_sum", "sum " + vstr(r.sum2) + " expected " + vstr(expect));
  }
  if (r.sum2 > -12) fail("charge_sum", "sum " + vstr(r.sum2) + " above -12");
  if (r.w0 == -1) fail("charge_negative_exists", "all charges non-negative");

  const int deg = g.degree(r.w0);
  const int out = x0.outdegree(r.w0);
  const int in = x0.indegree(r.w0);
  if (deg != 4 && deg != 5) fail("charge_case", "vertex " + vstr(r.w0) + " degree " + vstr(deg));
  if (out == deg && in == 0) {
    r.kind = ChargeCase::kCase1;
  } else if (deg == 4 && out == 3 && in == 0) {
    r.kind = ChargeCase::kCase2;
  } else {
    fail("charge_case", "vertex " + vstr(r.w0) + " degree " + vstr(deg) + " out " + vstr(out) +
                            " in " + vstr(in));
  }
  return r;
}

Configuration build_configuration(const PlanarGraph& g, const PathSystem& x0,
                                  const DischargeResult& d, SolveAudit* audit) {
  auto fail = [audit](const char* tag, const std::string& witness) {
    if (audit) ++audit->config_violations;
    throw assumption_violated(tag, witness);
  };
  auto check = [&fail](bool ok, const char* tag, const std::string& witness) {
    if (!ok) fail(tag, witness);
  };
  if (audit) ++audit->config_checks;

  const int w0 = d.w0;
  Configuration conf;

  if (d.kind == ChargeCase::kCase1) {
    conf.kind = ConfigKind::kX1;
    conf.root = w0;
    conf.system = x0.forward_closure(w0);
  } else {
    // The one edge at w0 no path covers; the system grows backward from it.
    std::vector<int> uncovered;
    for (int nbr : g.neighbors(w0)) {
      if (x0.edge_multiplicity(w0, nbr) == 0) uncovered.push_back(nbr);
    }
    check(uncovered.size() == 1,
          "config_uncovered_edge", "vertex " + vstr(w0) + " has " +
              vstr(static_cast<int>(uncovered.size())) + " uncovered edges");
    const int x = uncovered[0];

    const int f = g.face_of_directed(x, w0);
    const auto& walk = g.faces()[static_cast<std::size_t>(f)].walk;
    const int m = static_cast<int>(walk.size());
    int p = -1;
    for (int i = 0; i < m; ++i) {
      if (walk[i] == x && walk[(i + 1) % m] == w0) p = i;
    }
    check(p != -1, "config_uncovered_edge", "walk misses edge " + vstr(x) + "-" + vstr(w0));

    // Walk backward along the face while the degree stays 3; the stop vertex
    // opens the facial path into w0.
    std::vector<int> back;
    int j = p;
    int guard = 0;
    while (g.degree(walk[j]) == 3) {
      back.push_back(walk[j]);
      j = (j - 1 + m) % m;
      check(++guard <= m, "config_walk_wrapped", "face " + vstr(f));
    }
    const int v = walk[j];
    check(v != w0, "config_walk_wrapped", "face " + vstr(f));
    check(g.degree(v) == 2 || g.degree(v) == 4, "config_cut_degree",
          "vertex " + vstr(v) + " degree " + vstr(g.degree(v)));

    std::vector<int> pverts;
    pverts.push_back(v);
    for (auto it = back.rbegin(); it != back.rend(); ++it) pverts.push_back(*it);
    pverts.push_back(w0);
    check(pverts.size() >= 3, "config_no_inner",
          "path " + vstr(v) + ".." + vstr(w0) + " has no inner vertex");
    const FacialPath bigp{f, pverts};

    // The opening edge must already be covered by a path ending at v; the
    // endvertex rules lean on that anchor.
    bool anchored = false;
    for (int qi : x0.paths_covering(v, pverts[1])) {
      anchored = anchored || x0.paths()[static_cast<std::size_t>(qi)].verts.back() == v;
    }
    check(anchored, "config_anchor_path", "edge " + vstr(v) + "-" + vstr(pverts[1]));

    if (!x0.reaches(w0, v)) {
      conf.kind = ConfigKind::kX2;
      conf.root = v;
      conf.system = x0.forward_closure(v);
      const PathSystem fcw0 = x0.forward_closure(w0);
      for (const auto& path : fcw0.paths()) conf.system.add(path);
      conf.system.add(bigp);
    } else {
      const PathSystem fcw0 = x0.forward_closure(w0);
      const auto fcv = fcw0.vertices();
      const std::set<int> fcset(fcv.begin(), fcv.end());
      const int k = static_cast<int>(pverts.size()) - 1;
      int re = -1;
      for (int jj = 1; jj <= k && re == -1; ++jj) {
        if (fcset.count(pverts[static_cast<std::size_t>(k - jj)])) re = jj;
      }
      check(re >= 1, "config_reentry", "path into " + vstr(w0) + " never re-enters");
      if (re == 1) {
        conf.kind = ConfigKind::kX3;
        conf.root = w0;
        conf.system = fcw0;
        conf.e_star = norm_edge(w0, x);
        conf.u_star = x;
      } else {
        conf.kind = ConfigKind::kX4;
        std::vector<int> tail(pverts.begin() + (k - re + 1), pverts.end());
        conf.root = tail.front();
        check(g.degree(conf.root) == 3, "config_x4_root",
              "vertex " + vstr(conf.root) + " degree " + vstr(g.degree(conf.root)));
        conf.system = fcw0;
        conf.system.add(FacialPath{f, tail});
      }
    }
  }

  // Derived vertex classes.
  conf.v1 = conf.system.vertices();
  const std::set<int> v1set(conf.v1.begin(), conf.v1.end());
  for (int u : conf.v1) {
    if (conf.system.is_endvertex(u)) conf.w.push_back(u);
  }
  for (int u : conf.v1) {
    std::vector<int> outs;
    for (int nbr : g.neighbors(u)) {
      if (!v1set.count(nbr)) outs.push_back(nbr);
    }
    check(outs.size() <= 1, "config_outside_degree",
          "vertex " + vstr(u) + " has " + vstr(static_cast<int>(outs.size())) +
              " outside neighbors");
    if (outs.size() == 1) {
      conf.a.push_back(u);
      conf.outside_neighbor[u] = outs[0];
    }
  }
  for (int u : conf.v1) {
    for (int nbr : g.neighbors(u)) {
      if (nbr <= u || !v1set.count(nbr)) continue;
      if (conf.system.covers_edge(u, nbr)) continue;
      if (conf.e_star && *conf.e_star == norm_edge(u, nbr)) continue;
      conf.e1.emplace_back(u, nbr);
    }
  }
  std::sort(conf.e1.begin(), conf.e1.end());
  {
    std::set<int> excluded(conf.a.begin(), conf.a.end());
    excluded.insert(conf.w.begin(), conf.w.end());
    for (const auto& [p, q] : conf.e1) {
      excluded.insert(p);
      excluded.insert(q);
    }
    for (int u : conf.v1) {
      if (!excluded.count(u)) conf.b.push_back(u);
    }
  }
  for (const auto& path : conf.system.paths()) {
    conf.s[path.verts.back()].push_back(path.verts[path.verts.size() - 2]);
  }
  for (auto& [u, members] : conf.s) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
  }
  if (conf.u_star != -1) conf.s[conf.u_star] = {w0};

  // Validation of everything the extension later depends on.
  {
    const auto it = conf.s.find(conf.root);
    check(it == conf.s.end() || it->second.empty(), "config_root_s",
          "root " + vstr(conf.root) + " has incoming paths");
  }
  const bool want_nice = conf.kind == ConfigKind::kX1 || conf.kind == ConfigKind::kX3 ||
                         (conf.kind == ConfigKind::kX2 && g.degree(conf.root) == 4);
  const NiceReport nice = want_nice ? check_nice(g, conf.system)
                                    : check_almost_nice(g, conf.system, conf.root);
  check(nice.ok, "config_nice",
        nice.failed_condition + " at vertex " + vstr(nice.witness_vertex));
  check(conf.system.is_acyclic(), "config_acyclic", "root " + vstr(conf.root));
  check(conf.system.is_endvertex(conf.root), "config_degrees",
        "root " + vstr(conf.root) + " is not an endvertex");
  for (int u : conf.w) {
    const int deg = g.degree(u);
    if (u == conf.root) {
      check(deg >= 2 && deg <= 5, "config_degrees",
            "root " + vstr(u) + " degree " + vstr(deg));
    } else {
      check(deg == 2 || deg == 4, "config_degrees",
            "endvertex " + vstr(u) + " degree " + vstr(deg));
    }
  }
  {
    std::map<int, int> uses;
    for (const auto& [p, q] : conf.e1) {
      ++uses[p];
      ++uses[q];
    }
    for (const auto& [u, cnt] : uses) {
      const int cap = (conf.kind == ConfigKind::kX4 && u == conf.root) ? 2 : 1;
      check(cnt <= cap, "config_e1_matching",
            "vertex " + vstr(u) + " on " + vstr(cnt) + " uncovered edges");
    }
    if (conf.kind == ConfigKind::kX4) {
      check(uses.count(conf.root) == 1, "config_e1_matching",
            "root " + vstr(conf.root) + " off the uncovered edges");
    }
  }

  if (audit) {
    switch (conf.kind) {
      case ConfigKind::kX1: ++audit->config_x1; break;
      case ConfigKind::kX2: ++audit->config_x2; break;
      case ConfigKind::kX3: ++audit->config_x3; break;
      case ConfigKind::kX4: ++audit->config_x4; break;
    }
  }
  return conf;
}

ExtensionPlan make_extension_plan(const PlanarGraph& g, Configuration conf) {
  ExtensionPlan plan;
  const std::set<int> v1set(conf.v1.begin(), conf.v1.end());
  for (int u : conf.v1) {
    plan.degree[u] = g.degree(u);
    plan.neighbors[u] = g.neighbors(u);
    auto& in = plan.inside[u];
    for (int nbr : plan.neighbors[u]) {
      if (v1set.count(nbr)) in.push_back(nbr);
    }
  }
  plan.conf = std::move(conf);
  return plan;
}

namespace {

// Runs the staged coloring of a configuration on top of an already colored
// surrounding graph. Stages touch only uncolored vertices, so re-running on
// a partially colored system is harmless.
class ExtensionRun {
 public:
  ExtensionRun(const ExtensionPlan& plan, const ListAssignment& lists, Coloring* c,
               SolveAudit* audit)
      : plan_(plan),
        conf_(plan.conf),
        lists_(lists),
        c_(c),
        audit_(audit) {}

  void run() {
    for (const auto& [u, out] : conf_.outside_neighbor) {
      require_assumption(c_->has(out), "extension_precolor", "vertex " + vstr(out));
    }
    stage_outside();
    stage_e1();
    stage_covered();
    if (!stage_endvertices()) {
      throw assumption_violated("extension_postcondition",
                                "no completion for root " + vstr(conf_.root));
    }
  }

 private:
  // Vertices with an outside neighbor: differ from it.
  void stage_outside() {
    for (int u : conf_.a) {
      if (c_->has(u)) continue;
      c_->set(u, smallest_avoiding(lists_, u, c_->color(conf_.outside_neighbor.at(u))));
    }
  }

  // The uncovered induced edges form a near-matching; color them proper,
  // root first so both its edges see its color.
  void stage_e1() {
    if (conf_.e1.empty()) return;
    const int r = conf_.root;
    bool root_on_e1 = false;
    for (const auto& [p, q] : conf_.e1) root_on_e1 = root_on_e1 || p == r || q == r;
    if (root_on_e1) {
      if (!c_->has(r)) c_->set(r, smallest_avoiding(lists_, r));
      for (const auto& [p, q] : conf_.e1) {
        const int other = p == r ? q : (q == r ? p : -1);
        if (other != -1 && !c_->has(other)) {
          c_->set(other, smallest_avoiding(lists_, other, c_->color(r)));
        }
      }
    }
    for (const auto& [p, q] : conf_.e1) {
      if (!c_->has(p) && !c_->has(q)) {
        c_->set(p, smallest_avoiding(lists_, p));
        c_->set(q, smallest_avoiding(lists_, q, c_->color(p)));
      } else if (!c_->has(p)) {
        c_->set(p, smallest_avoiding(lists_, p, c_->color(q)));
      } else if (!c_->has(q)) {
        c_->set(q, smallest_avoiding(lists_, q, c_->color(p)));
      }
    }
    // Both ends may have been pinned by outside neighbors; repair a clash
    // while keeping those boundary constraints.
    for (const auto& [p, q] : conf_.e1) {
      if (c_->color(p) != c_->color(q)) continue;
      const auto boundary = [this](int u) {
        const auto it = conf_.outside_neighbor.find(u);
        return it == conf_.outside_neighbor.end() ? -1 : c_->color(it->second);
      };
      int repl = smallest_avoiding2(lists_, q, boundary(q), c_->color(p));
      if (repl != -1) {
        c_->set(q, repl);
        continue;
      }
      repl = smallest_avoiding2(lists_, p, boundary(p), c_->color(q));
      if (repl != -1) c_->set(p, repl);
      // Still equal: the final component check decides.
    }
  }

  // Interior covered vertices: walk each path and dodge the one neighbor
  // that is off the current path, then dissolve any surrounded vertex.
  void stage_covered() {
    std::set<int> bset(conf_.b.begin(), conf_.b.end());
    if (conf_.u_star != -1) bset.erase(conf_.u_star);
    for (const auto& path : conf_.system.paths()) {
      const int np = static_cast<int>(path.verts.size());
      for (int pi = 0; pi < np; ++pi) {
        const int v = path.verts[static_cast<std::size_t>(pi)];
        if (!bset.count(v) || c_->has(v)) continue;
        int avoid = -1;
        for (int nbr : plan_.neighbors.at(v)) {
          const bool on_path =
              (pi > 0 && nbr == path.verts[static_cast<std::size_t>(pi - 1)]) ||
              (pi + 1 < np && nbr == path.verts[static_cast<std::size_t>(pi + 1)]);
          if (!on_path && c_->has(nbr)) avoid = c_->color(nbr);
        }
        c_->set(v, smallest_avoiding(lists_, v, avoid));
      }
    }
    const std::vector<int> border(bset.begin(), bset.end());
    auto surrounded = [this](int v) {
      const auto& nbrs = plan_.neighbors.at(v);
      if (nbrs.size() != 3) return false;
      for (int nbr : nbrs) {
        if (!c_->has(nbr) || c_->color(nbr) != c_->color(v)) return false;
      }
      return true;
    };
    for (int round = 0; round < 64; ++round) {
      bool changed = false;
      for (int v : border) {
        if (!surrounded(v)) continue;
        c_->set(v, smallest_avoiding(lists_, v, c_->color(v)));
        changed = true;
      }
      if (!changed) break;
    }
    for (int v : border) {
      require_assumption(!surrounded(v), "b_stage_confinement", "vertex " + vstr(v));
    }
  }

  // Remaining vertices (endvertices and the far end of e_star) by priority:
  // dodge a color three neighbors share; dodge the colored predecessors on
  // incoming paths, branching when they disagree; the root dodges its most
  // repeated neighboring color.
  bool stage_endvertices() {
    for (;;) {
      std::vector<int> uncolored;
      for (int u : conf_.v1) {
        if (!c_->has(u)) uncolored.push_back(u);
      }
      if (uncolored.empty()) return check_gate();

      bool acted = false;
      for (int u : uncolored) {  // rule 1
        const int crowd = triple_color(u);
        if (crowd != -1) {
          c_->set(u, smallest_avoiding(lists_, u, crowd));
          acted = true;
          break;
        }
      }
      if (acted) continue;

      for (int u : uncolored) {  // rule 2
        const auto it = conf_.s.find(u);
        if (it == conf_.s.end()) continue;
        std::set<int> gammas;
        for (int sv : it->second) {
          if (c_->has(sv)) gammas.insert(c_->color(sv));
        }
        if (gammas.empty()) continue;
        if (gammas.size() == 1) {
          c_->set(u, smallest_avoiding(lists_, u, *gammas.begin()));
          acted = true;
          break;
        }
        return branch_on(u);  // predecessors disagree: genuine choice
      }
      if (acted) continue;

      if (!c_->has(conf_.root)) {  // rule 3
        c_->set(conf_.root, smallest_avoiding(lists_, conf_.root, crowd_color(conf_.root)));
        continue;
      }
      throw Error(Error::Code::kRuleDeadlock,
                  "no endvertex rule applies; vertex " + vstr(uncolored.front()) +
                      " is still uncolored");
    }
  }

  bool branch_on(int u) {
    std::map<int, int> snapshot;
    for (int v : conf_.v1) {
      if (c_->has(v)) snapshot[v] = c_->color(v);
    }
    for (int cand : ranked_candidates(u)) {
      c_->set(u, cand);
      if (stage_endvertices()) return true;
      if (audit_) ++audit_->extension_backtracks;
      for (int v : conf_.v1) {
        const auto it = snapshot.find(v);
        if (it != snapshot.end()) {
          c_->set(v, it->second);
        } else if (c_->has(v)) {
          c_->unset(v);
        }
      }
    }
    return false;
  }

  // Smallest color held by at least three neighbors, -1 when none.
  int triple_color(int u) const {
    std::map<int, int> count;
    for (int nbr : plan_.neighbors.at(u)) {
      if (c_->has(nbr)) ++count[c_->color(nbr)];
    }
    for (const auto& [col, k] : count) {
      if (k >= 3) return col;
    }
    return -1;
  }

  // Most repeated color among colored neighbors, smallest on ties; -1 when
  // no neighbor is colored.
  int crowd_color(int u) const {
    std::map<int, int> count;
    for (int nbr : plan_.neighbors.at(u)) {
      if (c_->has(nbr)) ++count[c_->color(nbr)];
    }
    int best = -1;
    int best_k = 0;
    for (const auto& [col, k] : count) {
      if (k > best_k) {
        best = col;
        best_k = k;
      }
    }
    return best;
  }

  // Candidates for a branching vertex, least loaded color first: order
  // by the total size of the same-colored components the choice would touch.
  std::vector<int> ranked_candidates(int u) const {
    std::vector<std::pair<long long, int>> keyed;
    for (int col : lists_.list(u)) {
      long long weight = 0;
      for (int nbr : plan_.neighbors.at(u)) {
        if (c_->has(nbr) && c_->color(nbr) == col) weight += component_size_from(nbr);
      }
      keyed.emplace_back(weight, col);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> out;
    out.reserve(keyed.size());
    for (const auto& [weight, col] : keyed) out.push_back(col);
    return out;
  }

  // Size of the monochromatic component through `start`, walking only
  // adjacency recorded in the plan; vertices outside it count once and stop.
  int component_size_from(int start) const {
    const int col = c_->color(start);
    std::set<int> seen{start};
    std::vector<int> stack{start};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      const auto it = plan_.neighbors.find(v);
      if (it == plan_.neighbors.end()) continue;
      for (int nbr : it->second) {
        if (c_->has(nbr) && c_->color(nbr) == col && seen.insert(nbr).second) {
          stack.push_back(nbr);
        }
      }
    }
    return static_cast<int>(seen.size());
  }

  // Success condition: boundary edges proper, e_star proper, and every new
  // monochromatic component a path of at most kDefaultMaxPathLen edges whose
  // edges two system paths cover together.
  bool check_gate() const {
    for (const auto& [u, out] : conf_.outside_neighbor) {
      if (c_->color(u) == c_->color(out)) return false;
    }
    if (conf_.e_star && c_->color(conf_.e_star->first) == c_->color(conf_.e_star->second)) {
      return false;
    }
    std::set<int> done;
    for (int v : conf_.v1) {
      if (done.count(v)) continue;
      const int col = c_->color(v);
      std::vector<int> comp{v};
      std::set<int> in_comp{v};
      for (std::size_t qi = 0; qi < comp.size(); ++qi) {
        for (int nbr : plan_.inside.at(comp[qi])) {
          if (c_->color(nbr) == col && in_comp.insert(nbr).second) comp.push_back(nbr);
        }
      }
      done.insert(comp.begin(), comp.end());
      if (comp.size() == 1) continue;

      std::vector<std::pair<int, int>> comp_edges;
      std::vector<int> ends;
      int edge_sum = 0;
      for (int cv : comp) {
        int deg = 0;
        for (int nbr : plan_.inside.at(cv)) {
          if (in_comp.count(nbr)) {
            ++deg;
            if (nbr > cv) comp_edges.emplace_back(cv, nbr);
          }
        }
        if (deg > 2) return false;  // not a path
        if (deg == 1) ends.push_back(cv);
        edge_sum += deg;
      }
      const int num_edges = edge_sum / 2;
      if (num_edges != static_cast<int>(comp.size()) - 1) return false;  // a cycle
      if (num_edges > kDefaultMaxPathLen) return false;
      if (ends.size() != 2) return false;

      const std::vector<int> ordered = ordered_path(ends[0], in_comp);
      if (ordered.size() != comp.size()) return false;
      const auto cover_first =
          conf_.system.paths_covering(ordered[0], ordered[1]);
      const auto cover_last = conf_.system.paths_covering(ordered[ordered.size() - 2],
                                                          ordered.back());
      bool covered = false;
      for (int i1 : cover_first) {
        for (int i2 : cover_last) {
          const auto& p1 = conf_.system.paths()[static_cast<std::size_t>(i1)];
          const auto& p2 = conf_.system.paths()[static_cast<std::size_t>(i2)];
          bool all = true;
          for (const auto& [ea, eb] : comp_edges) {
            all = all && (p1.has_edge(ea, eb) || p2.has_edge(ea, eb));
          }
          covered = covered || all;
          if (covered) break;
        }
        if (covered) break;
      }
      if (!covered) return false;
    }
    return true;
  }

  std::vector<int> ordered_path(int start, const std::set<int>& in_comp) const {
    std::vector<int> ordered{start};
    int prev = -1;
    int cur = start;
    while (ordered.size() <= in_comp.size()) {
      int next = -1;
      for (int nbr : plan_.inside.at(cur)) {
        if (nbr != prev && in_comp.count(nbr)) next = nbr;
      }
      if (next == -1) break;
      ordered.push_back(next);
      prev = cur;
      cur = next;
    }
    return ordered;
  }

  const ExtensionPlan& plan_;
  const Configuration& conf_;
  const ListAssignment& lists_;
  Coloring* c_;
  SolveAudit* audit_;
};

}  // namespace

void extend_coloring(const ExtensionPlan& plan, const ListAssignment& lists, Coloring* c,
                     SolveAudit* audit) {
  require_param(c != nullptr, "coloring must not be null");
  ExtensionRun run(plan, lists, c, audit);
  run.run();
}

void extend_coloring(const PlanarGraph& g, const Configuration& conf,
                     const ListAssignment& lists, Coloring* c, SolveAudit* audit) {
  extend_coloring(make_extension_plan(g, conf), lists, c, audit);
}

namespace {

// One deferred coloring action; the stack unwinds in reverse once the chain
// bottoms out.
struct StripStep {
  // Waves of (vertex, surviving neighbor or -1), in removal order.
  std::vector<std::vector<std::pair<int, int>>> waves;
};
struct ReductionStep {
  ReductionPlan plan;
};
struct ConfigStep {
  ExtensionPlan plan;
};
using SolveStep = std::variant<StripStep, ReductionStep, ConfigStep>;

void trace_line(const SolveOptions& opts, const std::string& line) {
  if (opts.trace) opts.trace(line);
}

void unwind_steps(std::vector<SolveStep>* stack, const ListAssignment& lists, Coloring* c,
                  SolveAudit* audit) {
  while (!stack->empty()) {
    SolveStep step = std::move(stack->back());
    stack->pop_back();
    if (auto* strip = std::get_if<StripStep>(&step)) {
      for (auto wave = strip->waves.rbegin(); wave != strip->waves.rend(); ++wave) {
        for (auto it = wave->rbegin(); it != wave->rend(); ++it) {
          const auto& [v, anchor] = *it;
          const int avoid = (anchor != -1 && c->has(anchor)) ? c->color(anchor) : -1;
          c->set(v, smallest_avoiding(lists, v, avoid));
        }
      }
    } else if (auto* red = std::get_if<ReductionStep>(&step)) {
      apply_reduction_extension(red->plan, lists, c);
    } else {
      extend_coloring(std::get<ConfigStep>(step).plan, lists, c, audit);
    }
  }
}

void solve_component(PlanarGraph g, const ListAssignment& lists, const SolveOptions& opts,
                     Coloring* c) {
  std::vector<SolveStep> stack;
  for (;;) {
    const int n = g.num_vertices();
    if (n == 0) break;

    if (n <= opts.oracle_threshold) {
      trace_line(opts, "oracle_leaf n=" + vstr(n));
      if (opts.audit) ++opts.audit->oracle_leaves;
      OracleQuery query;
      query.property = OracleProperty::good(kDefaultMaxPathLen);
      query.mode = OracleQuery::Mode::kExists;
      OracleOptions oracle_opts;
      oracle_opts.node_budget = opts.node_budget;
      const OracleResult res = oracle_search(g, lists, query, oracle_opts);
      require_assumption(res.satisfiable && res.witness.has_value(), "small_instance_unsolvable",
                         "n=" + vstr(n));
      for (int v : g.vertex_ids()) c->set(v, res.witness->color(v));
      break;
    }

    {  // peel leaves and isolated vertices; they are colored last
      std::vector<std::vector<std::pair<int, int>>> waves;
      int stripped = 0;
      for (;;) {
        std::vector<int> low;
        for (int v : g.vertex_ids()) {
          if (g.degree(v) <= 1) low.push_back(v);
        }
        if (low.empty()) break;
        std::vector<std::pair<int, int>> wave;
        for (int v : low) {
          const auto& nbrs = g.neighbors(v);
          wave.emplace_back(v, nbrs.empty() ? -1 : nbrs[0]);
        }
        g = g.delete_vertices(low);
        stripped += static_cast<int>(wave.size());
        waves.push_back(std::move(wave));
      }
      if (!waves.empty()) {
        trace_line(opts, "strip n=" + vstr(stripped));
        if (opts.audit) opts.audit->strip_waves += static_cast<long long>(waves.size());
        stack.push_back(StripStep{std::move(waves)});
        continue;
      }
    }

    {  // handle components independently
      const auto comps = g.components();
      if (comps.size() > 1) {
        trace_line(opts, "split comps=" + vstr(static_cast<int>(comps.size())));
        const auto all = g.vertex_ids();
        std::vector<PlanarGraph> parts;
        parts.reserve(comps.size());
        for (const auto& comp : comps) {
          std::vector<int> rest;
          std::set_difference(all.begin(), all.end(), comp.begin(), comp.end(),
                              std::back_inserter(rest));
          parts.push_back(g.delete_vertices(rest));
        }
        g = PlanarGraph();  // free before recursing
        for (auto& part : parts) {
          solve_component(std::move(part), lists, opts, c);
          part = PlanarGraph();
        }
        break;
      }
    }

    {  // make every face short
      PlanarGraph aug = augment_to_maximal(g, opts.audit);
      const int added = aug.num_edges() - g.num_edges();
      g = std::move(aug);
      if (added > 0) trace_line(opts, "augment added=" + vstr(added));
    }

    if (auto red = find_reduction(g)) {  // delete a reducible piece
      const bool cyc = red->kind == ReductionKind::kFaceCycle;
      trace_line(opts, std::string(cyc ? "reduce_face_cycle" : "reduce_deg2_path") +
                           " face=" + vstr(red->face) +
                           " removed=" + vstr(static_cast<int>(red->verts.size())));
      if (opts.audit) {
        ++(cyc ? opts.audit->reductions_face_cycle : opts.audit->reductions_deg2_path);
      }
      std::vector<int> doomed = red->verts;
      std::sort(doomed.begin(), doomed.end());
      g = g.delete_vertices(doomed);
      stack.push_back(ReductionStep{std::move(*red)});
      continue;
    }

    {  // no reduction left: carve out a configuration
      const PathSystem base = build_P(g);
      if (opts.audit) ++opts.audit->x0_checks;
      const PathSystem x0 = build_X0(g, base);
      const DischargeResult d = discharge(g, x0, opts.audit);
      Configuration conf = build_configuration(g, x0, d, opts.audit);
      const char* kind_name = conf.kind == ConfigKind::kX1   ? "X1"
                              : conf.kind == ConfigKind::kX2 ? "X2"
                              : conf.kind == ConfigKind::kX3 ? "X3"
                                                             : "X4";
      trace_line(opts, std::string("configuration kind=") + kind_name +
                           " root=" + vstr(conf.root) +
                           " removed=" + vstr(static_cast<int>(conf.v1.size())));
      ExtensionPlan plan = make_extension_plan(g, std::move(conf));
      g = g.delete_vertices(plan.conf.v1);
      stack.push_back(ConfigStep{std::move(plan)});
      continue;
    }
  }
  unwind_steps(&stack, lists, c, opts.audit);
}

}  // namespace

Coloring solve(const PlanarGraph& g, const ListAssignment& lists, const SolveOptions& opts) {
  const int girth = g.girth();
  if (girth != kInfinity && girth < 6) {
    throw Error(Error::Code::kGirthTooSmall, "girth " + vstr(girth) + " is below 6");
  }
  for (int v : g.vertex_ids()) {
    if (!lists.has(v)) {
      throw Error(Error::Code::kPreconditionViolated, "list_size", vstr(v),
                  "solve precondition [list_size]: vertex " + vstr(v) + " has no color list");
    }
  }

  Coloring c;
  solve_component(g, lists, opts, &c);

  const GoodReport report = is_good(g, c, kDefaultMaxPathLen);
  require_assumption(report.good, "solve_postcondition", report.reason);
  require_assumption(respects_lists(g, c, lists), "solve_postcondition", "color off its list");
  return c;
}

}  // namespace planarsplit
