// ===== mcgraph.cpp — The model-checking graph and the verdict search =====

#include "tccp/mcgraph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tccp {

// ── Replay helpers ──────────────────────────────────────────────────────────

namespace {

TermPtr subst_value(const Subst& s, const std::string& var) {
  auto it = s.find(var);
  return it == s.end() ? mk_var(var) : it->second;
}

/// The variables a state exposes to the replay (the same notion the trace
/// unrolling uses): increment-store variables plus pending-instance
/// arguments.
std::vector<std::string> replay_vars(const TccpState& st,
                                     const StateDetail& det) {
  std::vector<std::string> out;
  for (const auto& tok : st.store.positive_tokens()) vars_of(tok, out);
  for (const auto& bc : st.store.blocked()) vars_of(bc, out);
  for (const auto& inst : det.pending)
    for (const auto& v : free_vars(*inst.node))
      vars_of(subst_value(inst.subst, v), out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// The live variables of a state: the pending instances' arguments — only
/// they can reach any future constraint.
std::vector<std::string> live_vars(const StateDetail& det) {
  std::vector<std::string> out;
  for (const auto& inst : det.pending)
    for (const auto& v : free_vars(*inst.node))
      vars_of(subst_value(inst.subst, v), out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ── Q-set machinery ─────────────────────────────────────────────────────────

/// Closure indices of a member's parts, resolved once.
struct MemberLinks {
  int a = -1;          // Not/Next: operand; And/Until: left
  int b = -1;          // And/Until: right
  int self_next = -1;  // Until: next(this)
};

/// Enumerates the maximally consistent subsets of the closure for a given
/// store: atoms are decided by the store, booleans and untils are forced,
/// only next-polarities are free — with a negated next tied to the next of
/// the negation.
struct QEngine {
  const ClosureSet* cl = nullptr;
  std::vector<MemberLinks> links;
  std::vector<int> free_nexts;              // enumerated next members
  std::map<int, int> forced_nexts;          // next member -> earlier dual
  int target_index = -1;

  void init(const ClosureSet& c, const FormulaPtr& target) {
    cl = &c;
    target_index = c.index_of(target);
    links.resize(c.size());
    auto need = [&](const FormulaPtr& f) {
      int i = c.index_of(f);
      if (i < 0) throw std::logic_error("closure is missing a part");
      return i;
    };
    for (std::size_t i = 0; i < c.size(); ++i) {
      const FormulaPtr& m = c.members[i];
      switch (m->kind) {
        case Formula::Kind::Not:
          links[i].a = need(m->a);
          break;
        case Formula::Kind::Next:
          links[i].a = need(m->a);
          break;
        case Formula::Kind::And:
          links[i].a = need(m->a);
          links[i].b = need(m->b);
          break;
        case Formula::Kind::Until:
          links[i].a = need(m->a);
          links[i].b = need(m->b);
          links[i].self_next = need(f_next(m));
          break;
        default:
          break;
      }
    }
    for (int ni : c.nexts) {
      int dual = c.index_of(f_next(f_not(c.members[ni]->a)));
      if (dual >= 0 && dual < ni)
        forced_nexts[ni] = dual;
      else
        free_nexts.push_back(ni);
    }
  }

  /// Atom truth per member index (-1 for non-atoms).
  std::vector<signed char> atom_values(const Store& acc) const {
    std::vector<signed char> vals(cl->size(), -1);
    for (int ai : cl->atoms)
      vals[ai] = atom_holds(acc, cl->members[ai]) ? 1 : 0;
    return vals;
  }

  /// The full membership vector determined by atom truths and
  /// next-polarities.
  std::vector<bool> evaluate(const std::vector<signed char>& atoms,
                             const std::map<int, bool>& nexts) const {
    std::vector<signed char> val(cl->size(), -1);
    std::function<bool(int)> ev = [&](int i) -> bool {
      if (val[i] >= 0) return val[i] == 1;
      const FormulaPtr& m = cl->members[i];
      bool r = false;
      if (atoms[i] >= 0) {
        r = atoms[i] == 1;
      } else {
        switch (m->kind) {
          case Formula::Kind::True:
            r = true;
            break;
          case Formula::Kind::False:
            r = false;
            break;
          case Formula::Kind::Not:
            r = !ev(links[i].a);
            break;
          case Formula::Kind::And:
            r = ev(links[i].a) && ev(links[i].b);
            break;
          case Formula::Kind::Next:
            r = nexts.at(i);
            break;
          case Formula::Kind::Until:
            r = ev(links[i].b) || (ev(links[i].a) && ev(links[i].self_next));
            break;
          default:
            break;
        }
      }
      val[i] = r ? 1 : 0;
      return r;
    };
    std::vector<bool> q(cl->size());
    for (std::size_t i = 0; i < cl->size(); ++i) q[i] = ev(static_cast<int>(i));
    return q;
  }

  /// All consistent Q for the store, filtered by `keep`.
  std::vector<std::vector<bool>> enumerate(
      const Store& acc,
      const std::function<bool(const std::vector<bool>&)>& keep) const {
    std::vector<std::vector<bool>> out;
    std::vector<signed char> atoms = atom_values(acc);
    for (std::size_t mask = 0; mask < (std::size_t{1} << free_nexts.size());
         ++mask) {
      std::map<int, bool> nexts;
      for (std::size_t k = 0; k < free_nexts.size(); ++k)
        nexts[free_nexts[k]] = (mask >> k) & 1;
      for (int ni : cl->nexts)
        if (auto it = forced_nexts.find(ni); it != forced_nexts.end())
          nexts[ni] = !nexts.at(it->second);
      std::vector<bool> q = evaluate(atoms, nexts);
      if (keep(q)) out.push_back(std::move(q));
    }
    return out;
  }
};

}  // namespace

// ── Graph construction ──────────────────────────────────────────────────────

std::vector<FormulaPtr> MCGraph::q_of(int node) const {
  std::vector<FormulaPtr> out;
  for (std::size_t i = 0; i < cl.size(); ++i)
    if (nodes[node].q[i]) out.push_back(cl.members[i]);
  return out;
}

MCGraph build_graph(const FormulaPtr& negated, const TccpStructure& z,
                    const Program& p, const CheckLimits& limits) {
  (void)p;
  MCGraph g;
  g.cl = closure(negated);
  g.target = negated;
  g.structure = z;
  g.truncated = z.truncated;

  QEngine qe;
  qe.init(g.cl, negated);

  int minted = 0;
  std::vector<std::map<std::string, std::string>> thetas;
  std::map<std::pair<int, std::vector<bool>>, std::vector<int>> buckets;
  std::vector<std::vector<std::string>> live(z.states.size());
  for (std::size_t i = 0; i < z.states.size(); ++i)
    live[i] = live_vars(z.details[i]);

  // Two accumulations agree when the live variables — each resolved through
  // its own node's replay map into path variables — denote the same terms
  // under one injective renaming.
  auto acc_match = [&](int idx, const Store& acc,
                       const std::map<std::string, std::string>& theta,
                       int state) {
    const Store& a = g.nodes[static_cast<std::size_t>(idx)].acc_store;
    const auto& ta = thetas[static_cast<std::size_t>(idx)];
    auto path_var = [](const std::map<std::string, std::string>& t,
                       const std::string& v) {
      auto it = t.find(v);
      return mk_var(it == t.end() ? v : it->second);
    };
    VarMatcher m;
    for (const auto& v : live[static_cast<std::size_t>(state)])
      if (!m.term(a.apply(path_var(ta, v)), acc.apply(path_var(theta, v))))
        return false;
    return true;
  };

  std::deque<int> work;
  auto get_or_make = [&](int state, const Store& acc,
                         std::map<std::string, std::string> theta,
                         const std::vector<bool>& q, int depth) -> int {
    auto key = std::make_pair(state, q);
    for (int idx : buckets[key])
      if (acc_match(idx, acc, theta, state)) return idx;
    if (g.nodes.size() >= limits.max_states) {
      g.truncated = true;
      return -1;
    }
    int idx = static_cast<int>(g.nodes.size());
    g.nodes.push_back(MCNode{state, acc, q, depth});
    g.edges.emplace_back();
    thetas.push_back(std::move(theta));
    buckets[key].push_back(idx);
    work.push_back(idx);
    return idx;
  };

  // One structure arc replayed: the target's renaming undone against the
  // current replay map, fresh path variables minted for the rest.
  auto step_replay = [&](const std::map<std::string, std::string>& theta,
                         const Store& acc, const Arc* a) {
    Renaming undo = a->renaming.inverse();
    std::map<std::string, std::string> next;
    for (const auto& v : replay_vars(z.states[static_cast<std::size_t>(a->to)],
                                     z.details[static_cast<std::size_t>(a->to)])) {
      const std::string& w = undo.apply(v);
      auto it = theta.find(w);
      if (it != theta.end())
        next[v] = it->second;
      else
        next[v] = base_name(w) + "~" + std::to_string(minted++);
    }
    Subst s;
    for (const auto& [from, to] : next) s[from] = mk_var(to);
    Store joined = lub(
        acc, substitute(strip_blocked(z.states[static_cast<std::size_t>(a->to)]
                                          .store)
                            .positive_tokens(),
                        s));
    return std::make_pair(std::move(next), std::move(joined));
  };

  // Initial nodes sit over the successors of the structure's initial states
  // and must contain the target (the negated property).
  for (int s0 : z.initial) {
    std::map<std::string, std::string> theta0;
    for (const auto& v : replay_vars(z.states[static_cast<std::size_t>(s0)],
                                     z.details[static_cast<std::size_t>(s0)]))
      theta0[v] = v;
    Store acc0 =
        lub(Store{},
            strip_blocked(z.states[static_cast<std::size_t>(s0)].store)
                .positive_tokens());
    for (const Arc* a : z.arcs_from(s0)) {
      auto [theta1, acc1] = step_replay(theta0, acc0, a);
      if (acc1.is_aleph()) continue;
      auto qs = qe.enumerate(acc1, [&](const std::vector<bool>& q) {
        return q[static_cast<std::size_t>(qe.target_index)];
      });
      for (const auto& q : qs) {
        int idx = get_or_make(a->to, acc1, theta1, q, 1);
        if (idx >= 0 &&
            std::find(g.initial.begin(), g.initial.end(), idx) ==
                g.initial.end())
          g.initial.push_back(idx);
      }
    }
  }

  while (!work.empty()) {
    int n = work.front();
    work.pop_front();
    MCNode node = g.nodes[static_cast<std::size_t>(n)];  // copy: vector grows
    if (node.depth >= limits.time_limit) {
      if (!z.arcs_from(node.state).empty()) g.truncated = true;
      continue;
    }
    std::map<std::string, std::string> theta =
        thetas[static_cast<std::size_t>(n)];
    for (const Arc* a : z.arcs_from(node.state)) {
      auto [theta2, acc2] = step_replay(theta, node.acc_store, a);
      if (acc2.is_aleph()) continue;
      auto qs = qe.enumerate(acc2, [&](const std::vector<bool>& q) {
        for (int ni : g.cl.nexts)
          if (node.q[static_cast<std::size_t>(ni)] !=
              q[static_cast<std::size_t>(qe.links[static_cast<std::size_t>(ni)]
                                              .a)])
            return false;
        return true;
      });
      for (const auto& q : qs) {
        int m = get_or_make(a->to, acc2, theta2, q, node.depth + 1);
        if (m < 0) continue;
        auto& outs = g.edges[static_cast<std::size_t>(n)];
        if (std::find(outs.begin(), outs.end(), m) == outs.end())
          outs.push_back(m);
      }
    }
  }
  return g;
}

// ── SCC machinery ───────────────────────────────────────────────────────────

std::vector<std::vector<int>> sccs(const std::vector<std::vector<int>>& adj) {
  int n = static_cast<int>(adj.size());
  std::vector<int> index(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<char> on(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> out;
  int counter = 0;

  struct Frame {
    int v;
    std::size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    std::vector<Frame> dfs{{root, 0}};
    index[static_cast<std::size_t>(root)] =
        low[static_cast<std::size_t>(root)] = counter++;
    stack.push_back(root);
    on[static_cast<std::size_t>(root)] = 1;
    while (!dfs.empty()) {
      Frame& f = dfs.back();
      const auto& row = adj[static_cast<std::size_t>(f.v)];
      if (f.edge < row.size()) {
        int w = row[f.edge++];
        if (index[static_cast<std::size_t>(w)] == -1) {
          index[static_cast<std::size_t>(w)] =
              low[static_cast<std::size_t>(w)] = counter++;
          stack.push_back(w);
          on[static_cast<std::size_t>(w)] = 1;
          dfs.push_back(Frame{w, 0});
        } else if (on[static_cast<std::size_t>(w)]) {
          low[static_cast<std::size_t>(f.v)] =
              std::min(low[static_cast<std::size_t>(f.v)],
                       index[static_cast<std::size_t>(w)]);
        }
      } else {
        if (low[static_cast<std::size_t>(f.v)] ==
            index[static_cast<std::size_t>(f.v)]) {
          std::vector<int> comp;
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on[static_cast<std::size_t>(w)] = 0;
            comp.push_back(w);
            if (w == f.v) break;
          }
          std::sort(comp.begin(), comp.end());
          out.push_back(std::move(comp));
        }
        int v = f.v;
        dfs.pop_back();
        if (!dfs.empty())
          low[static_cast<std::size_t>(dfs.back().v)] =
              std::min(low[static_cast<std::size_t>(dfs.back().v)],
                       low[static_cast<std::size_t>(v)]);
      }
    }
  }
  return out;
}

bool nontrivial(const std::vector<int>& component,
                const std::vector<std::vector<int>>& adj) {
  if (component.size() > 1) return true;
  if (component.empty()) return false;
  int v = component[0];
  const auto& row = adj[static_cast<std::size_t>(v)];
  return std::find(row.begin(), row.end(), v) != row.end();
}

bool self_fulfilling(const MCGraph& g, const std::vector<int>& component) {
  for (int ui : g.cl.untils) {
    bool present = false;
    for (int n : component)
      if (g.nodes[static_cast<std::size_t>(n)].q[static_cast<std::size_t>(ui)]) {
        present = true;
        break;
      }
    if (!present) continue;
    int bi = g.cl.index_of(g.cl.members[static_cast<std::size_t>(ui)]->b);
    bool witnessed = false;
    for (int m : component)
      if (g.nodes[static_cast<std::size_t>(m)].q[static_cast<std::size_t>(bi)]) {
        witnessed = true;
        break;
      }
    if (!witnessed) return false;
  }
  return true;
}

// ── Verdict ─────────────────────────────────────────────────────────────────

namespace {

/// Independent re-verification of a counterexample: local Q rules, edge
/// conditions, until witnesses and mutual reachability are all re-checked
/// from first principles against the concrete stores.
bool verify_witness(const MCGraph& g, const Witness& w) {
  if (w.prefix.empty() || w.scc.empty()) return false;
  QEngine qe;
  try {
    qe.init(g.cl, g.target);
  } catch (const std::logic_error&) {
    return false;
  }

  auto local_ok = [&](int n) {
    const MCNode& node = g.nodes[static_cast<std::size_t>(n)];
    if (node.q.size() != g.cl.size()) return false;
    std::vector<signed char> atoms = qe.atom_values(node.acc_store);
    std::map<int, bool> nexts;
    for (int ni : g.cl.nexts) nexts[ni] = node.q[static_cast<std::size_t>(ni)];
    for (const auto& [ni, dual] : qe.forced_nexts)
      if (nexts.at(ni) == nexts.at(dual)) return false;  // broken tie
    std::vector<bool> expect = qe.evaluate(atoms, nexts);
    return expect == node.q;
  };

  auto edge_ok = [&](int a, int b) {
    const MCNode& na = g.nodes[static_cast<std::size_t>(a)];
    const MCNode& nb = g.nodes[static_cast<std::size_t>(b)];
    bool arc = false;
    for (const Arc* ar : g.structure.arcs_from(na.state))
      if (ar->to == nb.state) {
        arc = true;
        break;
      }
    if (!arc) return false;
    for (int ni : g.cl.nexts) {
      int inner = qe.links[static_cast<std::size_t>(ni)].a;
      if (na.q[static_cast<std::size_t>(ni)] !=
          nb.q[static_cast<std::size_t>(inner)])
        return false;
    }
    return true;
  };

  // The prefix: starts initial, carries the target, steps are real edges.
  if (std::find(g.initial.begin(), g.initial.end(), w.prefix.front()) ==
      g.initial.end())
    return false;
  if (qe.target_index < 0 ||
      !g.nodes[static_cast<std::size_t>(w.prefix.front())]
           .q[static_cast<std::size_t>(qe.target_index)])
    return false;
  for (int n : w.prefix)
    if (!local_ok(n)) return false;
  for (std::size_t i = 0; i + 1 < w.prefix.size(); ++i)
    if (!edge_ok(w.prefix[i], w.prefix[i + 1])) return false;
  if (std::find(w.scc.begin(), w.scc.end(), w.prefix.back()) == w.scc.end())
    return false;

  // The component: every node locally consistent, edges re-checked, the
  // members mutually reachable through re-checked edges, untils fulfilled.
  for (int n : w.scc)
    if (!local_ok(n)) return false;

  std::map<int, std::vector<int>> inside;
  for (int n : w.scc) {
    for (int m : g.edges[static_cast<std::size_t>(n)])
      if (std::find(w.scc.begin(), w.scc.end(), m) != w.scc.end() &&
          edge_ok(n, m))
        inside[n].push_back(m);
  }
  bool has_edge = false;
  for (const auto& [n, row] : inside) has_edge |= !row.empty();
  if (!has_edge) return false;
  for (int start : w.scc) {
    std::set<int> seen{start};
    std::deque<int> bfs{start};
    while (!bfs.empty()) {
      int v = bfs.front();
      bfs.pop_front();
      for (int m : inside[v])
        if (seen.insert(m).second) bfs.push_back(m);
    }
    for (int other : w.scc)
      if (!seen.count(other) && other != start) return false;
    // A single-node component must close on itself.
    if (w.scc.size() == 1 && inside[start].empty()) return false;
  }

  for (int ui : g.cl.untils) {
    bool present = false;
    for (int n : w.scc)
      if (g.nodes[static_cast<std::size_t>(n)].q[static_cast<std::size_t>(ui)])
        present = true;
    if (!present) continue;
    int bi = g.cl.index_of(g.cl.members[static_cast<std::size_t>(ui)]->b);
    bool witnessed = false;
    for (int m : w.scc)
      if (g.nodes[static_cast<std::size_t>(m)].q[static_cast<std::size_t>(bi)])
        witnessed = true;
    if (!witnessed) return false;
  }
  return true;
}

}  // namespace

Verdict search_graph(const MCGraph& g) {
  // Reachability with parents, for witness extraction.
  std::vector<int> parent(g.nodes.size(), -2);
  std::deque<int> bfs;
  for (int n : g.initial) {
    if (parent[static_cast<std::size_t>(n)] == -2) {
      parent[static_cast<std::size_t>(n)] = -1;
      bfs.push_back(n);
    }
  }
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop_front();
    for (int m : g.edges[static_cast<std::size_t>(v)])
      if (parent[static_cast<std::size_t>(m)] == -2) {
        parent[static_cast<std::size_t>(m)] = v;
        bfs.push_back(m);
      }
  }

  for (const auto& comp : sccs(g.edges)) {
    if (!nontrivial(comp, g.edges)) continue;
    if (!self_fulfilling(g, comp)) continue;
    int entry = -1;
    for (int n : comp)
      if (parent[static_cast<std::size_t>(n)] != -2) {
        entry = n;
        break;
      }
    if (entry < 0) continue;
    Witness w;
    w.scc = comp;
    for (int v = entry; v != -1; v = parent[static_cast<std::size_t>(v)])
      w.prefix.push_back(v);
    std::reverse(w.prefix.begin(), w.prefix.end());
    if (!verify_witness(g, w)) continue;

    std::ostringstream detail;
    detail << "counterexample lasso: " << w.prefix.size()
           << " position(s) into a component of " << w.scc.size()
           << " node(s) over structure state";
    std::set<int> states;
    for (int n : w.scc) states.insert(g.nodes[static_cast<std::size_t>(n)].state);
    detail << (states.size() == 1 ? " " : "s ");
    bool first = true;
    for (int s : states) {
      detail << (first ? "" : ", ") << "s" << s;
      first = false;
    }
    Verdict v;
    v.kind = Verdict::Kind::Violated;
    v.witness = std::move(w);
    v.detail = detail.str();
    return v;
  }

  Verdict v;
  if (g.truncated) {
    v.kind = Verdict::Kind::Inconclusive;
    v.detail =
        "exploration truncated (time or state limit); no counterexample in "
        "the explored part";
  } else {
    std::ostringstream detail;
    detail << "no counterexample: " << g.nodes.size() << " graph node(s) over "
           << g.structure.states.size() << " structure state(s)";
    v.kind = Verdict::Kind::Satisfied;
    v.detail = detail.str();
  }
  return v;
}

Verdict check_structure(const TccpStructure& z, const Program& p,
                        const FormulaPtr& property, const CheckLimits& limits) {
  return search_graph(build_graph(f_not(property), z, p, limits));
}

Verdict check(const Program& p, const FormulaPtr& property,
              const CheckLimits& limits) {
  BuildLimits bl;
  bl.time_limit = limits.time_limit;
  bl.max_states = limits.max_states;
  return check_structure(construct_program(p, bl), p, property, limits);
}

int exit_code(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::Satisfied:
      return 0;
    case Verdict::Kind::Violated:
      return 1;
    case Verdict::Kind::Inconclusive:
      return 2;
  }
  return 2;
}

// ── Output ──────────────────────────────────────────────────────────────────

std::string to_dot(const MCGraph& g) {
  std::ostringstream os;
  os << "digraph mcgraph {\n";
  os << "  rankdir=TB;\n";
  os << "  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const MCNode& n = g.nodes[i];
    os << "  m" << i << " [label=\"m" << i << " (s" << n.state << ")\\nacc: "
       << to_string(n.acc_store) << "\\nQ: {";
    bool first = true;
    for (std::size_t k = 0; k < n.q.size(); ++k)
      if (n.q[k]) {
        os << (first ? "" : ", ") << k;
        first = false;
      }
    os << "}\"";
    if (std::find(g.initial.begin(), g.initial.end(), static_cast<int>(i)) !=
        g.initial.end())
      os << ", peripheries=2";
    os << "];\n";
  }
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    for (int m : g.edges[i]) os << "  m" << i << " -> m" << m << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace tccp
