// ===== semantics.cpp — Oracle interpreter for the transition rules =====

#include "tccp/semantics.hpp"

#include <optional>

namespace tccp {

namespace {

/// What one instant of activity by a group of agents produces: the constraints
/// told during the instant and the agents left for the next one.
struct Outcome {
  TokenConj told;
  std::vector<AgentInst> residual;
};

/// Flatten parallel composition, resolve hiding by fresh renaming and drop
/// stop, leaving only tell/choice/now/call instances.
void normalize(const Agent* a, const Subst& subst, FreshVarGen& fresh,
               std::vector<AgentInst>& out) {
  switch (a->kind) {
    case Agent::Kind::Stop:
      return;
    case Agent::Kind::Parallel:
      normalize(a->left.get(), subst, fresh, out);
      normalize(a->right.get(), subst, fresh, out);
      return;
    case Agent::Kind::Hide: {
      Subst s = subst;
      for (const auto& v : a->hide_vars) s[v] = mk_var(fresh.fresh(v));
      normalize(a->left.get(), s, fresh, out);
      return;
    }
    default:
      out.push_back(AgentInst{a, subst});
      return;
  }
}

std::optional<std::vector<Outcome>> step_group(
    const std::vector<AgentInst>& insts, const Store& d, const Program& p,
    FreshVarGen& fresh);

/// One agent's behaviour within the instant; nullopt = no applicable rule.
std::optional<std::vector<Outcome>> step_inst(const AgentInst& inst,
                                              const Store& d, const Program& p,
                                              FreshVarGen& fresh) {
  const Agent& a = *inst.node;
  switch (a.kind) {
    case Agent::Kind::Tell:
      return std::vector<Outcome>{
          Outcome{substitute(a.constraint, inst.subst), {}}};
    case Agent::Kind::Choice: {
      std::vector<Outcome> alts;
      for (const auto& br : a.branches) {
        if (!entails(d, substitute(br.guard, inst.subst))) continue;
        Outcome o;
        normalize(br.body.get(), inst.subst, fresh, o.residual);
        alts.push_back(std::move(o));
      }
      if (alts.empty()) return std::nullopt;  // keeps waiting
      return alts;
    }
    case Agent::Kind::Call: {
      const Declaration& decl = p.decls[a.call_decl];
      Subst s;
      for (std::size_t k = 0; k < decl.params.size(); ++k) {
        auto it = inst.subst.find(a.call_args[k]);
        s[decl.params[k]] =
            it != inst.subst.end() ? it->second : mk_var(a.call_args[k]);
      }
      for (const auto& v : free_vars(*decl.body))
        if (!s.count(v)) s[v] = mk_var(fresh.fresh(v));
      Outcome o;
      normalize(decl.body.get(), s, fresh, o.residual);
      return std::vector<Outcome>{std::move(o)};
    }
    case Agent::Kind::Now: {
      const Agent* branch = entails(d, substitute(a.constraint, inst.subst))
                                ? a.left.get()
                                : a.right.get();
      std::vector<AgentInst> pieces;
      normalize(branch, inst.subst, fresh, pieces);
      if (auto alts = step_group(pieces, d, p, fresh)) return alts;
      // The taken branch cannot act this instant; it gets the next one.
      return std::vector<Outcome>{Outcome{{}, std::move(pieces)}};
    }
    default:
      return std::nullopt;  // Stop/Parallel/Hide never reach a configuration
  }
}

/// Maximal parallelism over a group: every agent that can act does, the rest
/// carry over; nullopt when no agent at all can act.
std::optional<std::vector<Outcome>> step_group(
    const std::vector<AgentInst>& insts, const Store& d, const Program& p,
    FreshVarGen& fresh) {
  std::vector<Outcome> acc{Outcome{}};
  bool any = false;
  for (const auto& inst : insts) {
    auto alts = step_inst(inst, d, p, fresh);
    if (!alts) {
      for (auto& o : acc) o.residual.push_back(inst);
      continue;
    }
    any = true;
    std::vector<Outcome> merged;
    merged.reserve(acc.size() * alts->size());
    for (const auto& o : acc)
      for (const auto& alt : *alts) {
        Outcome m = o;
        m.told.insert(m.told.end(), alt.told.begin(), alt.told.end());
        m.residual.insert(m.residual.end(), alt.residual.begin(),
                          alt.residual.end());
        merged.push_back(std::move(m));
      }
    acc = std::move(merged);
  }
  if (!any) return std::nullopt;
  return acc;
}

}  // namespace

std::vector<Configuration> step(const Configuration& c, const Program& p,
                                FreshVarGen& fresh) {
  std::vector<Configuration> out;
  auto alts = step_group(c.agents, c.store, p, fresh);
  if (!alts) return out;
  for (auto& o : *alts) {
    Store s = lub(c.store, o.told);
    if (s.is_aleph()) continue;  // a failed simultaneous join cannot occur
    out.push_back(Configuration{std::move(o.residual), std::move(s)});
  }
  return out;
}

Configuration initial_configuration(const Program& p, FreshVarGen& fresh) {
  Configuration c;
  if (p.goal) normalize(p.goal.get(), Subst{}, fresh, c.agents);
  return c;
}

std::vector<Trace> run_bounded(const Program& p, int T,
                               const RunLimits& limits) {
  FreshVarGen fresh;
  std::vector<Trace> traces;

  struct Frame {
    Configuration config;
    Trace trace;
  };
  std::vector<Frame> stack;
  Configuration c0 = initial_configuration(p, fresh);
  stack.push_back(Frame{c0, Trace{c0.store}});

  std::size_t expanded = 0;
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (static_cast<int>(f.trace.size()) == T + 1) {
      traces.push_back(std::move(f.trace));
      if (traces.size() > limits.max_traces)
        throw ResourceError("bounded run produced too many traces");
      continue;
    }
    if (++expanded > limits.max_configurations)
      throw ResourceError("bounded run visited too many configurations");
    auto succs = step(f.config, p, fresh);
    if (succs.empty()) {
      // Quiescent (or every join failed): the store repeats from here on.
      while (static_cast<int>(f.trace.size()) < T + 1)
        f.trace.push_back(f.config.store);
      traces.push_back(std::move(f.trace));
      if (traces.size() > limits.max_traces)
        throw ResourceError("bounded run produced too many traces");
      continue;
    }
    for (auto& s : succs) {
      Trace t = f.trace;
      t.push_back(s.store);
      stack.push_back(Frame{std::move(s), std::move(t)});
    }
  }
  return traces;
}

}  // namespace tccp
