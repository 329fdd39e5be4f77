// ===== structure.cpp — Structure construction, analysis and unrolling =====
//
// Two layers live here.  The single-instant operators (instant_analysis,
// instant, follows, flat, combine) analyse ONE agent for one time unit and
// are defined literally on the syntax.  The builder (construct/construct_ag)
// iterates a richer per-state expansion:
//
//   phase 1 — every pending agent acts: tells contribute their constraint,
//             calls unfold (formals bound to actuals, remaining body
//             variables refreshed), choices commit to an entailed guard or —
//             when none is entailed — branch over consistent guard
//             assumptions plus a keep-waiting alternative;
//   phase 2 — the wrappers of what the instant produced are resolved against
//             the accumulated store joined with the new increment: hiding
//             renames fresh, parallel splits, stop drops, and a conditional
//             either commits (guard entailed / guard inconsistent) or splits
//             the construction into an assumed-then and a blocked-else state.
//
// Folding (find_equivalent) is what keeps recursive programs finite: a
// candidate successor equivalent to an existing state up to a variable
// renaming becomes a back arc carrying that renaming.

#include "tccp/structure.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tccp {

namespace {

TermPtr subst_value(const Subst& s, const std::string& var) {
  auto it = s.find(var);
  return it != s.end() ? it->second : mk_var(var);
}

std::vector<Label> labels_of(const std::vector<AgentInst>& insts) {
  std::vector<Label> out;
  out.reserve(insts.size());
  for (const auto& i : insts) out.push_back(i.node->label);
  return out;
}

}  // namespace

std::vector<const Arc*> TccpStructure::arcs_from(int state) const {
  std::vector<const Arc*> out;
  for (const auto& a : arcs)
    if (a.from == state) out.push_back(&a);
  return out;
}

// ── Single-instant analysis ─────────────────────────────────────────────────

namespace {

/// One instant of the agent under subst, starting from st; tell and choice
/// entries carry their raw contribution, conditional branches are already
/// joined with st (the guard itself stays out of the result).
std::vector<InstantEntry> go(const Program& p, const Store& st, const Agent* a,
                             const Subst& subst, FreshVarGen& fresh) {
  std::vector<InstantEntry> out;
  switch (a->kind) {
    case Agent::Kind::Stop:
      out.push_back(InstantEntry{Store{}, {}});
      return out;
    case Agent::Kind::Tell:
      out.push_back(
          InstantEntry{lub(Store{}, substitute(a->constraint, subst)), {}});
      return out;
    case Agent::Kind::Choice: {
      for (const auto& br : a->branches)
        out.push_back(InstantEntry{lub(Store{}, substitute(br.guard, subst)),
                                   {br.body->label}});
      out.push_back(InstantEntry{Store{}, {a->label}});  // keep waiting
      return out;
    }
    case Agent::Kind::Now: {
      TokenConj g = substitute(a->constraint, subst);
      for (auto& e : go(p, lub(st, g), a->left.get(), subst, fresh))
        out.push_back(InstantEntry{lub(st, e.store), std::move(e.labels)});
      for (auto& e : go(p, block(st, g), a->right.get(), subst, fresh))
        out.push_back(InstantEntry{lub(st, e.store), std::move(e.labels)});
      return out;
    }
    case Agent::Kind::Parallel: {
      auto ls = go(p, st, a->left.get(), subst, fresh);
      auto rs = go(p, st, a->right.get(), subst, fresh);
      for (const auto& el : ls)
        for (const auto& er : rs) {
          InstantEntry e{lub(el.store, er.store), el.labels};
          e.labels.insert(er.labels.begin(), er.labels.end());
          out.push_back(std::move(e));
        }
      return out;
    }
    case Agent::Kind::Hide: {
      Subst s = subst;
      for (const auto& v : a->hide_vars) s[v] = mk_var(fresh.fresh(v));
      return go(p, st, a->left.get(), s, fresh);
    }
    case Agent::Kind::Call:
      out.push_back(InstantEntry{Store{}, {a->label}});
      return out;
  }
  return out;
}

}  // namespace

std::vector<InstantEntry> instant_analysis(const Program& p, const Store& st,
                                           const Label& l) {
  LabelIndex idx(p);
  const Agent* a = idx.agent_of(l);
  if (!a) throw std::invalid_argument("label does not name an agent: " + to_string(l));
  FreshVarGen fresh;
  std::vector<InstantEntry> out = go(p, st, a, Subst{}, fresh);
  for (auto& e : out) e.store = lub(st, e.store);
  return out;
}

std::vector<Store> instant(const Program& p, const Store& st, const Label& l) {
  std::vector<Store> out;
  for (auto& e : instant_analysis(p, st, l)) out.push_back(std::move(e.store));
  return out;
}

std::vector<std::set<Label>> follows(const Program& p, const Label& l) {
  std::vector<std::set<Label>> out;
  for (auto& e : instant_analysis(p, Store{}, l))
    out.push_back(std::move(e.labels));
  return out;
}

std::vector<Store> flat(const Store& st, const std::vector<Store>& stores) {
  std::vector<Store> out;
  out.reserve(stores.size());
  for (const auto& s : stores) out.push_back(lub(st, s));
  return out;
}

std::vector<std::set<Label>> combine(const std::vector<std::set<Label>>& a,
                                     const std::vector<std::set<Label>>& b) {
  std::vector<std::set<Label>> out;
  out.reserve(a.size() * b.size());
  for (const auto& ea : a)
    for (const auto& eb : b) {
      std::set<Label> u = ea;
      u.insert(eb.begin(), eb.end());
      out.push_back(std::move(u));
    }
  return out;
}

// ── Structure construction ──────────────────────────────────────────────────

namespace {

/// A fully resolved instant: the increment store (assumptions and blocks
/// included) and the leaf agents left pending.
struct Resolution {
  Store c;
  std::vector<AgentInst> leaves;
};

/// Resolves the wrappers in wl[i..] over a_base joined with the increment c
/// built so far.  Underdetermined conditionals split the resolution; every
/// complete alternative is appended to out.
void resolve_pending(std::vector<AgentInst> wl, std::size_t i,
                     std::vector<AgentInst> leaves, Store c,
                     const Store& a_base, FreshVarGen& fresh,
                     std::vector<Resolution>& out) {
  while (i < wl.size()) {
    AgentInst inst = wl[i];
    const Agent& ag = *inst.node;
    switch (ag.kind) {
      case Agent::Kind::Stop:
        ++i;
        continue;
      case Agent::Kind::Parallel:
        wl[i] = AgentInst{ag.left.get(), inst.subst};
        wl.insert(wl.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                  AgentInst{ag.right.get(), inst.subst});
        continue;
      case Agent::Kind::Hide: {
        Subst s = inst.subst;
        for (const auto& v : ag.hide_vars) s[v] = mk_var(fresh.fresh(v));
        wl[i] = AgentInst{ag.left.get(), std::move(s)};
        continue;
      }
      case Agent::Kind::Now: {
        TokenConj g = substitute(ag.constraint, inst.subst);
        Store s_acc = lub(a_base, c);
        if (entails(s_acc, g)) {
          wl[i] = AgentInst{ag.left.get(), inst.subst};
          continue;
        }
        if (lub(s_acc, g).is_aleph()) {
          wl[i] = AgentInst{ag.right.get(), inst.subst};
          continue;
        }
        // Underdetermined: assume the guard for the then branch, block it
        // for the else branch.
        {
          std::vector<AgentInst> then_wl = wl;
          then_wl[i] = AgentInst{ag.left.get(), inst.subst};
          resolve_pending(std::move(then_wl), i, leaves, lub(c, g), a_base,
                          fresh, out);
        }
        wl[i] = AgentInst{ag.right.get(), inst.subst};
        c = block(c, g);
        continue;
      }
      default:
        leaves.push_back(std::move(inst));
        ++i;
        continue;
    }
  }
  out.push_back(Resolution{std::move(c), std::move(leaves)});
}

/// Adds the candidate as a new state, or folds it onto an equivalent
/// existing one; returns (index, renaming candidate -> index).
std::pair<int, Renaming> add_or_fold(TccpStructure& z, TccpState cand,
                                     StateDetail det) {
  if (auto hit = find_equivalent(z, cand, det)) return *hit;
  int idx = static_cast<int>(z.states.size());
  z.states.push_back(std::move(cand));
  z.details.push_back(std::move(det));
  return {idx, Renaming{}};
}

TccpStructure construct_root(const Program& p, const Agent* root,
                             const BuildLimits& limits) {
  TccpStructure z;
  FreshVarGen fresh;

  std::vector<Resolution> first;
  resolve_pending({AgentInst{root, Subst{}}}, 0, {}, Store{}, Store{}, fresh,
                  first);

  std::deque<int> work;
  for (auto& r : first) {
    if (r.c.is_aleph()) continue;
    std::size_t before = z.states.size();
    auto [idx, renaming] =
        add_or_fold(z, TccpState{r.c, labels_of(r.leaves), 0},
                    StateDetail{r.leaves, strip_blocked(r.c)});
    (void)renaming;
    if (std::find(z.initial.begin(), z.initial.end(), idx) == z.initial.end())
      z.initial.push_back(idx);
    if (z.states.size() > before) work.push_back(idx);
  }

  while (!work.empty()) {
    int i = work.front();
    work.pop_front();
    if (z.states[i].depth >= limits.time_limit) {
      z.truncated = true;
      continue;
    }
    if (z.states.size() >= limits.max_states) {
      z.truncated = true;
      break;
    }
    for (int n : construct_ag(z, i, p, fresh, limits)) work.push_back(n);
  }
  return z;
}

}  // namespace

TccpStructure construct(const Program& p, int decl_index,
                        const BuildLimits& limits) {
  if (decl_index < 0 || decl_index >= static_cast<int>(p.decls.size()))
    throw std::invalid_argument("no such declaration");
  return construct_root(p, p.decls[decl_index].body.get(), limits);
}

TccpStructure construct_goal(const Program& p, const BuildLimits& limits) {
  if (!p.goal) throw std::invalid_argument("program has no goal");
  return construct_root(p, p.goal.get(), limits);
}

TccpStructure construct_program(const Program& p, const BuildLimits& limits) {
  if (p.goal && p.goal->kind == Agent::Kind::Call && p.goal->call_decl >= 0)
    return construct(p, p.goal->call_decl, limits);  // the called process IS the system
  if (p.goal) return construct_goal(p, limits);
  if (!p.decls.empty()) return construct(p, 0, limits);
  throw std::invalid_argument("nothing to build: no goal and no declaration");
}

std::vector<int> construct_ag(TccpStructure& z, int state, const Program& p,
                              FreshVarGen& fresh, const BuildLimits& limits) {
  (void)limits;
  const TccpState snap = z.states[state];        // copies: z grows below
  const StateDetail det = z.details[state];
  std::vector<int> fresh_states;

  if (det.pending.empty()) {   // terminated: the state repeats forever
    z.arcs.push_back(Arc{state, Renaming{}, state});
    return fresh_states;
  }

  const Store& A = det.accumulated;

  // Phase 1: every pending agent acts; alternatives multiply out.
  struct Alt {
    TokenConj new_info;                // tells plus assumed ask guards
    std::vector<AgentInst> residual;   // activated bodies (wrappers allowed)
  };
  std::vector<Alt> alts{Alt{}};
  for (const AgentInst& inst : det.pending) {
    const Agent& ag = *inst.node;
    std::vector<Alt> opts;
    switch (ag.kind) {
      case Agent::Kind::Tell:
        opts.push_back(Alt{substitute(ag.constraint, inst.subst), {}});
        break;
      case Agent::Kind::Call: {
        const Declaration& decl = p.decls[ag.call_decl];
        Subst s;
        for (std::size_t k = 0; k < decl.params.size(); ++k)
          s[decl.params[k]] = subst_value(inst.subst, ag.call_args[k]);
        for (const auto& v : free_vars(*decl.body))
          if (!s.count(v)) s[v] = mk_var(fresh.fresh(v));
        opts.push_back(Alt{{}, {AgentInst{decl.body.get(), std::move(s)}}});
        break;
      }
      case Agent::Kind::Choice: {
        std::vector<const AskBranch*> entailed;
        for (const auto& br : ag.branches)
          if (entails(A, substitute(br.guard, inst.subst)))
            entailed.push_back(&br);
        if (!entailed.empty()) {
          for (const auto* br : entailed)
            opts.push_back(Alt{{}, {AgentInst{br->body.get(), inst.subst}}});
        } else {
          for (const auto& br : ag.branches) {
            TokenConj g = substitute(br.guard, inst.subst);
            if (!lub(A, g).is_aleph())
              opts.push_back(Alt{g, {AgentInst{br.body.get(), inst.subst}}});
          }
          opts.push_back(Alt{{}, {inst}});  // keeps waiting
        }
        break;
      }
      default:
        break;  // wrappers never pend
    }
    std::vector<Alt> merged;
    merged.reserve(alts.size() * opts.size());
    for (const auto& a : alts)
      for (const auto& o : opts) {
        Alt m = a;
        m.new_info.insert(m.new_info.end(), o.new_info.begin(),
                          o.new_info.end());
        m.residual.insert(m.residual.end(), o.residual.begin(),
                          o.residual.end());
        merged.push_back(std::move(m));
      }
    alts = std::move(merged);
  }

  // Phase 2: form the successor states.
  bool any_arc = false;
  for (const Alt& alt : alts) {
    Store c = lub(Store{}, alt.new_info);
    if (c.is_aleph() || lub(A, c).is_aleph()) continue;
    std::vector<Resolution> resolutions;
    resolve_pending(alt.residual, 0, {}, std::move(c), A, fresh, resolutions);
    for (auto& r : resolutions) {
      if (r.c.is_aleph()) continue;
      Store a_with_c = lub(A, r.c);  // rechecks blocks against everything
      if (a_with_c.is_aleph()) continue;
      std::size_t before = z.states.size();
      auto [idx, renaming] =
          add_or_fold(z, TccpState{r.c, labels_of(r.leaves), snap.depth + 1},
                      StateDetail{r.leaves, strip_blocked(a_with_c)});
      if (z.states.size() > before) fresh_states.push_back(idx);
      z.arcs.push_back(Arc{state, std::move(renaming), idx});
      any_arc = true;
    }
  }
  if (!any_arc)  // every alternative was inconsistent: the instant stutters
    z.arcs.push_back(Arc{state, Renaming{}, state});
  return fresh_states;
}

// ── Folding ─────────────────────────────────────────────────────────────────

namespace {

/// Matches the resolved domains of two stores injectively under m (with
/// backtracking), then their blocked sets as multisets.
bool match_stores(const Store& a, const Store& b, VarMatcher& m);

bool match_blocked(const std::vector<TokenConj>& ba,
                   const std::vector<TokenConj>& bb, std::size_t i,
                   std::vector<bool>& used, const Store& a, const Store& b,
                   VarMatcher& m) {
  if (i == ba.size()) return true;
  TokenConj ca = a.apply(ba[i]);
  for (std::size_t k = 0; k < bb.size(); ++k) {
    if (used[k]) continue;
    TokenConj cb = b.apply(bb[k]);
    if (ca.size() != cb.size()) continue;
    std::size_t mark = m.mark();
    bool ok = true;
    for (std::size_t j = 0; ok && j < ca.size(); ++j)
      ok = m.token(ca[j], cb[j]);
    if (ok) {
      used[k] = true;
      if (match_blocked(ba, bb, i + 1, used, a, b, m)) return true;
      used[k] = false;
    }
    m.undo(mark);
  }
  return false;
}

struct DomainEntry {
  std::string var;
  TermPtr value;
};

bool match_domains(const std::vector<DomainEntry>& da,
                   const std::vector<DomainEntry>& db, std::size_t i,
                   std::vector<bool>& used, const Store& a, const Store& b,
                   VarMatcher& m) {
  if (i == da.size()) {
    std::vector<bool> bused(b.blocked().size(), false);
    return match_blocked(a.blocked(), b.blocked(), 0, bused, a, b, m);
  }
  // Same-name targets first: matching a store against itself then finds the
  // identity immediately.
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < db.size(); ++k)
    if (!used[k] && db[k].var == da[i].var) order.push_back(k);
  for (std::size_t k = 0; k < db.size(); ++k)
    if (!used[k] && db[k].var != da[i].var) order.push_back(k);
  for (std::size_t k : order) {
    std::size_t mark = m.mark();
    if (m.add(da[i].var, db[k].var) && m.term(da[i].value, db[k].value)) {
      used[k] = true;
      if (match_domains(da, db, i + 1, used, a, b, m)) return true;
      used[k] = false;
    }
    m.undo(mark);
  }
  return false;
}

bool match_stores(const Store& a, const Store& b, VarMatcher& m) {
  if (a.is_aleph() || b.is_aleph()) return a.is_aleph() == b.is_aleph();
  if (a.bindings().size() != b.bindings().size()) return false;
  if (a.blocked().size() != b.blocked().size()) return false;
  auto entries = [](const Store& s) {
    std::vector<DomainEntry> out;
    for (const auto& tok : s.positive_tokens())
      out.push_back(DomainEntry{tok.lhs->name, s.apply(tok.rhs)});
    return out;
  };
  std::vector<DomainEntry> da = entries(a), db = entries(b);
  std::vector<bool> used(db.size(), false);
  return match_domains(da, db, 0, used, a, b, m);
}

/// Pairs up same-label pending instances (backtracking over permutations
/// within a label group) and checks, under one growing renaming, their
/// argument vectors, what the accumulated store says about those arguments,
/// and finally the increment stores.
bool match_states(const TccpState& ca, const StateDetail& da,
                  const TccpState& cb, const StateDetail& db, std::size_t i,
                  std::vector<bool>& used, VarMatcher& m) {
  if (i == da.pending.size()) return match_stores(ca.store, cb.store, m);
  const AgentInst& ia = da.pending[i];
  for (std::size_t k = 0; k < db.pending.size(); ++k) {
    if (used[k]) continue;
    const AgentInst& ib = db.pending[k];
    if (ia.node != ib.node) continue;  // labels are unique per node
    std::size_t mark = m.mark();
    bool ok = true;
    for (const auto& v : free_vars(*ia.node)) {
      TermPtr ta = subst_value(ia.subst, v);
      TermPtr tb = subst_value(ib.subst, v);
      if (!m.term(ta, tb) ||
          !m.term(da.accumulated.apply(ta), db.accumulated.apply(tb))) {
        ok = false;
        break;
      }
    }
    if (ok) {
      used[k] = true;
      if (match_states(ca, da, cb, db, i + 1, used, m)) return true;
      used[k] = false;
    }
    m.undo(mark);
  }
  return false;
}

}  // namespace

std::optional<std::pair<int, Renaming>> find_equivalent(
    const TccpStructure& z, const TccpState& cand_state,
    const StateDetail& cand_detail) {
  std::vector<Label> cl = cand_state.labels;
  std::sort(cl.begin(), cl.end());
  for (std::size_t idx = 0; idx < z.states.size(); ++idx) {
    const TccpState& st = z.states[idx];
    if (st.labels.size() != cl.size()) continue;
    std::vector<Label> el = st.labels;
    std::sort(el.begin(), el.end());
    if (el != cl) continue;
    VarMatcher m;
    std::vector<bool> used(z.details[idx].pending.size(), false);
    if (match_states(cand_state, cand_detail, st, z.details[idx], 0, used, m))
      return std::make_pair(static_cast<int>(idx), m.renaming());
  }
  return std::nullopt;
}

// ── Unrolling ───────────────────────────────────────────────────────────────

namespace {

/// The variables a state exposes to the replay: everything in its increment
/// store plus the pending instances' arguments.
std::vector<std::string> state_vars(const TccpState& st,
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

struct Replay {
  int state;
  std::map<std::string, std::string> theta;  // state var -> trace var
  Store delta;
  Trace trace;
};

}  // namespace

std::vector<Trace> delta_traces(const TccpStructure& z, int horizon) {
  std::vector<Trace> out;
  int minted = 0;

  auto delta_step = [](const Store& prev, const TccpState& st,
                       const std::map<std::string, std::string>& theta) {
    Subst s;
    for (const auto& [from, to] : theta) s[from] = mk_var(to);
    return lub(prev, substitute(strip_blocked(st.store).positive_tokens(), s));
  };

  std::vector<Replay> stack;
  for (int s0 : z.initial) {
    Replay r;
    r.state = s0;
    for (const auto& v : state_vars(z.states[s0], z.details[s0]))
      r.theta[v] = v;  // the first instant keeps its own names
    r.delta = delta_step(Store{}, z.states[s0], r.theta);
    r.trace.push_back(r.delta);
    stack.push_back(std::move(r));
  }

  while (!stack.empty()) {
    Replay r = std::move(stack.back());
    stack.pop_back();
    if (static_cast<int>(r.trace.size()) == horizon + 1) {
      out.push_back(std::move(r.trace));
      continue;
    }
    auto arcs = z.arcs_from(r.state);
    if (arcs.empty()) {  // truncated state: the last store repeats
      while (static_cast<int>(r.trace.size()) < horizon + 1)
        r.trace.push_back(r.delta);
      out.push_back(std::move(r.trace));
      continue;
    }
    for (const Arc* a : arcs) {
      Replay n;
      n.state = a->to;
      Renaming undo = a->renaming.inverse();
      for (const auto& v : state_vars(z.states[a->to], z.details[a->to])) {
        const std::string& w = undo.apply(v);  // the candidate's name for v
        auto it = r.theta.find(w);
        if (it != r.theta.end()) {
          n.theta[v] = it->second;
        } else {
          n.theta[v] = base_name(w) + "~" + std::to_string(minted++);
        }
      }
      n.delta = delta_step(r.delta, z.states[a->to], n.theta);
      n.trace = r.trace;
      n.trace.push_back(n.delta);
      stack.push_back(std::move(n));
    }
  }
  return out;
}

namespace {

bool match_trace_from(const Trace& ta, const Trace& tb, std::size_t pos,
                      VarMatcher& m) {
  if (pos == ta.size()) return true;
  const Store& a = ta[pos];
  const Store& b = tb[pos];
  if (a.is_aleph() != b.is_aleph()) return false;
  if (a.is_aleph()) return match_trace_from(ta, tb, pos + 1, m);
  if (a.bindings().size() != b.bindings().size()) return false;
  std::vector<DomainEntry> da, db;
  for (const auto& tok : a.positive_tokens())
    da.push_back(DomainEntry{tok.lhs->name, a.apply(tok.rhs)});
  for (const auto& tok : b.positive_tokens())
    db.push_back(DomainEntry{tok.lhs->name, b.apply(tok.rhs)});

  std::vector<bool> used(db.size(), false);
  std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
    if (i == da.size()) return match_trace_from(ta, tb, pos + 1, m);
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < db.size(); ++k)
      if (!used[k] && db[k].var == da[i].var) order.push_back(k);
    for (std::size_t k = 0; k < db.size(); ++k)
      if (!used[k] && db[k].var != da[i].var) order.push_back(k);
    for (std::size_t k : order) {
      std::size_t mark = m.mark();
      if (m.add(da[i].var, db[k].var) && m.term(da[i].value, db[k].value)) {
        used[k] = true;
        if (assign(i + 1)) return true;
        used[k] = false;
      }
      m.undo(mark);
    }
    return false;
  };
  return assign(0);
}

}  // namespace

bool equivalent_traces(const Trace& a, const Trace& b) {
  if (a.size() != b.size()) return false;
  VarMatcher m;
  return match_trace_from(a, b, 0, m);
}

bool same_trace_set(const std::vector<Trace>& a, const std::vector<Trace>& b) {
  auto covered = [](const std::vector<Trace>& xs, const std::vector<Trace>& ys) {
    for (const auto& x : xs) {
      bool found = false;
      for (const auto& y : ys)
        if (equivalent_traces(x, y)) {
          found = true;
          break;
        }
      if (!found) return false;
    }
    return true;
  };
  return covered(a, b) && covered(b, a);
}

// ── Output ──────────────────────────────────────────────────────────────────

std::string to_dot(const TccpStructure& z) {
  std::ostringstream os;
  os << "digraph structure {\n";
  os << "  rankdir=TB;\n";
  os << "  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t i = 0; i < z.states.size(); ++i) {
    const TccpState& s = z.states[i];
    std::vector<std::string> names;
    for (const auto& l : s.labels) names.push_back(to_string(l));
    std::sort(names.begin(), names.end());
    os << "  s" << i << " [label=\"s" << i << "\\nC: " << to_string(s.store)
       << "\\nT: {";
    for (std::size_t k = 0; k < names.size(); ++k)
      os << (k ? ", " : "") << names[k];
    os << "}\"";
    if (std::find(z.initial.begin(), z.initial.end(), static_cast<int>(i)) !=
        z.initial.end())
      os << ", peripheries=2";
    if (z.arcs_from(static_cast<int>(i)).empty()) os << ", style=dashed";
    os << "];\n";
  }
  for (const auto& a : z.arcs) {
    os << "  s" << a.from << " -> s" << a.to;
    if (!a.renaming.empty() && !a.renaming.is_identity())
      os << " [label=\"" << to_string(a.renaming) << "\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace tccp
