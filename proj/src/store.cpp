// ===== store.cpp — Constraint stores =====
//
// The solved form is kept triangular (each domain variable bound once, no
// variable reachable from its own binding), which is what the canonical
// printouts use; entailment and equivalence work on the fully resolved
// (idempotent) view.
//
// Entailment treats a query variable as a pattern variable when it is
// runtime-fresh (prime-suffixed) AND absent from the store: such variables
// are the existentially quantified locals a guard acquired through hide
// renaming or call unfolding, and one consistent instantiation of them may
// be chosen.  Every other variable is rigid.  Matching is one-sided
// unification on the pattern variables only, so it stays deterministic.

#include "tccp/store.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tccp {

namespace {

bool is_primed(const std::string& name) {
  return name.find('\'') != std::string::npos;
}

}  // namespace

// ── Basic accessors ─────────────────────────────────────────────────────────

Store Store::aleph() {
  Store s;
  s.aleph_ = true;
  return s;
}

void Store::note_var(const std::string& v) {
  if (std::find(order_.begin(), order_.end(), v) == order_.end())
    order_.push_back(v);
}

void Store::note_vars(const TermPtr& t) {
  if (t->kind == Term::Kind::Var) {
    note_var(t->name);
    return;
  }
  for (const auto& a : t->args) note_vars(a);
}

std::size_t Store::rank(const std::string& var) const {
  for (std::size_t i = 0; i < order_.size(); ++i)
    if (order_[i] == var) return i;
  return order_.size();
}

namespace {

TermPtr resolve_term(const std::map<std::string, TermPtr>& bind, const TermPtr& t,
                     std::map<std::string, TermPtr>& memo) {
  switch (t->kind) {
    case Term::Kind::Var: {
      auto m = memo.find(t->name);
      if (m != memo.end()) return m->second;
      auto b = bind.find(t->name);
      if (b == bind.end()) return t;
      TermPtr r = resolve_term(bind, b->second, memo);
      memo[t->name] = r;
      return r;
    }
    case Term::Kind::Atom:
    case Term::Kind::Anonymous:
      return t;
    default: {
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      bool changed = false;
      for (const auto& a : t->args) {
        args.push_back(resolve_term(bind, a, memo));
        changed = changed || args.back().get() != a.get();
      }
      if (!changed) return t;
      return std::make_shared<Term>(t->kind, t->name, std::move(args));
    }
  }
}

}  // namespace

TermPtr Store::value_of(const std::string& var) const {
  std::map<std::string, TermPtr> memo;
  return resolve_term(bind_, mk_var(var), memo);
}

TermPtr Store::apply(const TermPtr& t) const {
  std::map<std::string, TermPtr> memo;
  return resolve_term(bind_, t, memo);
}

TokenConj Store::apply(const TokenConj& c) const {
  std::map<std::string, TermPtr> memo;
  TokenConj out;
  out.reserve(c.size());
  for (const auto& t : c)
    out.push_back(Token{resolve_term(bind_, t.lhs, memo),
                        resolve_term(bind_, t.rhs, memo)});
  return out;
}

TokenConj Store::positive_tokens() const {
  std::vector<std::string> dom;
  for (const auto& [v, t] : bind_) dom.push_back(v);
  std::sort(dom.begin(), dom.end(), [this](const std::string& a, const std::string& b) {
    return rank(a) < rank(b);
  });
  TokenConj out;
  for (const auto& v : dom) out.push_back(Token{mk_var(v), bind_.at(v)});
  return out;
}

std::vector<std::string> Store::positive_vars() const {
  std::vector<std::string> out;
  for (const auto& tok : positive_tokens()) vars_of(tok, out);
  return out;
}

// ── Unification (triangular, occurs-checked) ────────────────────────────────

namespace {

TermPtr walk(const std::map<std::string, TermPtr>& bind, TermPtr t) {
  while (t->kind == Term::Kind::Var) {
    auto it = bind.find(t->name);
    if (it == bind.end()) return t;
    t = it->second;
  }
  return t;
}

bool occurs(const std::map<std::string, TermPtr>& bind, const std::string& x,
            const TermPtr& t, std::set<std::string>& seen) {
  TermPtr w = walk(bind, t);
  if (w->kind == Term::Kind::Var) {
    if (w->name == x) return true;
    return false;
  }
  for (const auto& a : w->args) {
    if (a->kind == Term::Kind::Var && !seen.insert(a->name).second) continue;
    if (occurs(bind, x, a, seen)) return true;
  }
  return false;
}

bool occurs(const std::map<std::string, TermPtr>& bind, const std::string& x,
            const TermPtr& t) {
  std::set<std::string> seen;
  return occurs(bind, x, t, seen);
}

}  // namespace

bool Store::unify(TermPtr a, TermPtr b) {
  a = walk(bind_, a);
  b = walk(bind_, b);
  if (a->kind == Term::Kind::Var && b->kind == Term::Kind::Var) {
    if (a->name == b->name) return true;
    // Younger variable points at the older one.
    if (rank(a->name) < rank(b->name)) std::swap(a, b);
    bind_[a->name] = b;
    return true;
  }
  if (a->kind == Term::Kind::Var || b->kind == Term::Kind::Var) {
    if (b->kind == Term::Kind::Var) std::swap(a, b);
    if (occurs(bind_, a->name, b)) return false;
    bind_[a->name] = b;
    return true;
  }
  if (a->kind != b->kind || a->name != b->name || a->args.size() != b->args.size())
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!unify(a->args[i], b->args[i])) return false;
  return true;
}

// ── Entailment ──────────────────────────────────────────────────────────────

namespace {

struct PatternMatch {
  const Store& d;
  std::set<std::string> store_vars;  // vars occurring in d's positive part
  Subst rho;                         // pattern-variable instantiation

  explicit PatternMatch(const Store& store) : d(store) {
    for (const auto& [v, t] : store.bindings()) {
      store_vars.insert(v);
      for (const auto& w : vars_of(t)) store_vars.insert(w);
    }
  }

  bool flexible(const std::string& name) const {
    return is_primed(name) && store_vars.count(name) == 0;
  }

  TermPtr deref(TermPtr t) {
    while (t->kind == Term::Kind::Var) {
      auto it = rho.find(t->name);
      if (it == rho.end()) return t;
      t = it->second;
    }
    return t;
  }

  bool match(TermPtr a, TermPtr b) {
    a = deref(a);
    b = deref(b);
    if (a->kind == Term::Kind::Var && b->kind == Term::Kind::Var &&
        a->name == b->name)
      return true;
    if (a->kind == Term::Kind::Var && flexible(a->name)) {
      if (mentions(b, a->name)) return false;
      rho[a->name] = b;
      return true;
    }
    if (b->kind == Term::Kind::Var && flexible(b->name)) {
      if (mentions(a, b->name)) return false;
      rho[b->name] = a;
      return true;
    }
    if (a->kind != b->kind || a->name != b->name ||
        a->args.size() != b->args.size())
      return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
      if (!match(a->args[i], b->args[i])) return false;
    return true;
  }
};

}  // namespace

bool entails(const Store& d, const TokenConj& c) {
  if (d.is_aleph()) return true;  // the top element entails everything
  PatternMatch pm(d);
  for (const auto& tok : c)
    if (!pm.match(d.apply(tok.lhs), d.apply(tok.rhs))) return false;
  return true;
}

bool entails(const Store& d, const Token& t) { return entails(d, TokenConj{t}); }

bool Store::entails_any_blocked() const {
  Store positive_only = *this;
  positive_only.blocked_.clear();
  for (const auto& b : blocked_)
    if (tccp::entails(positive_only, b)) return true;
  return false;
}

// ── Joins ───────────────────────────────────────────────────────────────────

namespace {

/// Blocked conjunctions act as a set: joining a store with itself (or
/// re-blocking the same guard) must not grow the blocked list.
bool already_blocked(const std::vector<TokenConj>& blocked, const TokenConj& c) {
  const std::string key = to_string(c);
  for (const auto& b : blocked)
    if (to_string(b) == key) return true;
  return false;
}

}  // namespace

Store lub(const Store& d, const TokenConj& c) {
  if (d.is_aleph()) return Store::aleph();
  Store r = d;
  for (const auto& tok : c) {
    r.note_vars(tok.lhs);
    r.note_vars(tok.rhs);
    if (!r.unify(tok.lhs, tok.rhs)) return Store::aleph();
  }
  if (r.entails_any_blocked()) return Store::aleph();
  return r;
}

Store lub(const Store& a, const Store& b) {
  if (a.is_aleph() || b.is_aleph()) return Store::aleph();
  Store r = a;
  for (const auto& tok : b.positive_tokens()) {
    r.note_vars(tok.lhs);
    r.note_vars(tok.rhs);
    if (!r.unify(tok.lhs, tok.rhs)) return Store::aleph();
  }
  for (const auto& blk : b.blocked_) {
    for (const auto& tok : blk) {
      r.note_vars(tok.lhs);
      r.note_vars(tok.rhs);
    }
    if (!already_blocked(r.blocked_, blk)) r.blocked_.push_back(blk);
  }
  if (r.entails_any_blocked()) return Store::aleph();
  return r;
}

Store block(const Store& d, const TokenConj& c) {
  if (d.is_aleph()) return Store::aleph();
  if (entails(d, c)) return Store::aleph();
  Store r = d;
  for (const auto& tok : c) {
    r.note_vars(tok.lhs);
    r.note_vars(tok.rhs);
  }
  if (!already_blocked(r.blocked_, c)) r.blocked_.push_back(c);
  return r;
}

Store strip_blocked(const Store& d) {
  Store r = d;
  r.blocked_.clear();
  return r;
}

// ── Hiding ──────────────────────────────────────────────────────────────────

namespace {

struct HideContext {
  const std::string& x;
  // Resolved view: domain var -> fully applied binding, in rank order.
  std::vector<std::pair<std::string, TermPtr>> resolved;

  /// Re-expresses t (which mentions x) through x-free consequences:
  /// decomposition first, then whole-term matching against other bindings.
  TermPtr express(const TermPtr& t, const std::string& self) const {
    if (!mentions(t, x)) return t;
    if (t->kind == Term::Kind::Cons || t->kind == Term::Kind::Compound) {
      std::vector<TermPtr> args;
      bool ok = true;
      for (const auto& a : t->args) {
        TermPtr e = express(a, self);
        if (!e) {
          ok = false;
          break;
        }
        args.push_back(e);
      }
      if (ok) return std::make_shared<Term>(t->kind, t->name, std::move(args));
    }
    for (const auto& [v, r] : resolved)
      if (v != self && v != x && equal(r, t)) return mk_var(v);
    return nullptr;
  }
};

}  // namespace

namespace {

bool store_mentions(const Store& d, const std::string& x) {
  if (d.bindings().count(x)) return true;
  for (const auto& [v, t] : d.bindings())
    if (mentions(t, x)) return true;
  for (const auto& blk : d.blocked())
    for (const auto& tok : blk)
      if (mentions(tok.lhs, x) || mentions(tok.rhs, x)) return true;
  return false;
}

}  // namespace

Store hide(const std::string& x, const Store& d) {
  if (d.is_aleph()) return Store::aleph();
  if (!store_mentions(d, x)) return d;  // existential over an absent variable

  HideContext ctx{x, {}};
  for (const auto& tok : d.positive_tokens())
    ctx.resolved.emplace_back(tok.lhs->name, d.apply(tok.rhs));

  TokenConj keep;
  bool x_in_domain = d.bindings().count(x) > 0;
  for (const auto& [v, t] : ctx.resolved) {
    if (v == x) continue;  // x's own binding is dropped
    if (!mentions(t, x)) {
      keep.push_back(Token{mk_var(v), t});
      continue;
    }
    // With x in the domain the resolved view cannot mention x again.
    (void)x_in_domain;
    TermPtr e = ctx.express(t, v);
    if (e) keep.push_back(Token{mk_var(v), e});
  }

  // A blocked guard survives only if every occurrence of x in its resolved
  // form can be rewritten through an equivalent visible variable; a guard
  // genuinely about x alone is dropped with it.
  std::vector<TokenConj> blocked;
  for (const auto& blk : d.blocked()) {
    TokenConj expressed;
    bool ok = true;
    for (const auto& tok : d.apply(blk)) {
      TermPtr l = ctx.express(tok.lhs, "");
      TermPtr r = ctx.express(tok.rhs, "");
      if (!l || !r) {
        ok = false;
        break;
      }
      expressed.push_back(Token{l, r});
    }
    if (ok) blocked.push_back(expressed);
  }

  // Rebuild with the source's rank order (minus x), so variable orientation
  // is inherited rather than re-derived from the export order: hiding in a
  // different order yields the same solved form.
  Store out;
  for (const auto& v : d.order_)
    if (v != x) out.note_var(v);
  out = lub(out, keep);
  if (out.is_aleph()) return Store::aleph();
  for (const auto& blk : blocked) out = block(out, blk);
  return out;
}

Store hide(const std::vector<std::string>& xs, const Store& d) {
  Store r = d;
  for (const auto& x : xs) r = hide(x, r);
  return r;
}

// ── Renaming ────────────────────────────────────────────────────────────────

Store rename(const Store& d, const Renaming& r) {
  if (d.is_aleph()) return Store::aleph();

  std::vector<std::string> vars = d.positive_vars();
  for (const auto& blk : d.blocked())
    for (const auto& tok : blk) vars_of(tok, vars);  // vars_of dedups

  std::set<std::string> targets;
  for (const auto& v : vars)
    if (!targets.insert(r.apply(v)).second)
      throw std::invalid_argument("rename: map is not injective on the store's variables");

  // Renaming by an injective map is structural on the solved form: map every
  // binding pair and the rank order directly.  No re-unification happens, so
  // orientation survives and the round trip reproduces d exactly.
  Store out;
  for (const auto& v : d.order_) out.note_var(r.apply(v));
  for (const auto& [v, t] : d.bind_) out.bind_[r.apply(v)] = r.apply(t);
  for (const auto& blk : d.blocked_) out.blocked_.push_back(r.apply(blk));
  return out;
}

// ── Equivalence modulo renaming ─────────────────────────────────────────────

namespace {

struct EquivMatch {
  // Matches fully resolved terms, extending gamma bijectively.
  static bool term(const TermPtr& a, const TermPtr& b, Renaming& gamma) {
    if (a->kind == Term::Kind::Var && b->kind == Term::Kind::Var)
      return gamma.add(a->name, b->name);
    if (a->kind != b->kind || a->name != b->name ||
        a->args.size() != b->args.size())
      return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
      if (!term(a->args[i], b->args[i], gamma)) return false;
    return true;
  }

  static bool conj(const TokenConj& a, const TokenConj& b, Renaming& gamma) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!term(a[i].lhs, b[i].lhs, gamma) || !term(a[i].rhs, b[i].rhs, gamma))
        return false;
    return true;
  }
};

struct EquivSearch {
  std::vector<std::pair<std::string, TermPtr>> da, db;  // resolved, rank order
  std::vector<TokenConj> ba, bb;                        // resolved blocked
  std::vector<bool> used_db, used_bb;

  bool domains(std::size_t i, Renaming& gamma) {
    if (i == da.size()) return blocked(0, gamma);
    // Prefer the same name first: equivalent(d, d) yields the identity.
    std::vector<std::size_t> cands;
    for (std::size_t j = 0; j < db.size(); ++j)
      if (!used_db[j] && db[j].first == da[i].first) cands.push_back(j);
    for (std::size_t j = 0; j < db.size(); ++j)
      if (!used_db[j] && db[j].first != da[i].first) cands.push_back(j);
    for (std::size_t j : cands) {
      Renaming g = gamma;
      if (!g.add(da[i].first, db[j].first)) continue;
      if (!EquivMatch::term(da[i].second, db[j].second, g)) continue;
      used_db[j] = true;
      if (domains(i + 1, g)) {
        gamma = g;
        return true;
      }
      used_db[j] = false;
    }
    return false;
  }

  bool blocked(std::size_t i, Renaming& gamma) {
    if (i == ba.size()) return true;
    for (std::size_t j = 0; j < bb.size(); ++j) {
      if (used_bb[j]) continue;
      Renaming g = gamma;
      if (!EquivMatch::conj(ba[i], bb[j], g)) continue;
      used_bb[j] = true;
      if (blocked(i + 1, g)) {
        gamma = g;
        return true;
      }
      used_bb[j] = false;
    }
    return false;
  }
};

}  // namespace

std::optional<Renaming> equivalent(const Store& a, const Store& b) {
  if (a.is_aleph() != b.is_aleph()) return std::nullopt;
  if (a.is_aleph()) return Renaming{};
  if (a.bindings().size() != b.bindings().size()) return std::nullopt;
  if (a.blocked().size() != b.blocked().size()) return std::nullopt;

  EquivSearch s;
  for (const auto& tok : a.positive_tokens())
    s.da.emplace_back(tok.lhs->name, a.apply(tok.rhs));
  for (const auto& tok : b.positive_tokens())
    s.db.emplace_back(tok.lhs->name, b.apply(tok.rhs));
  for (const auto& blk : a.blocked()) s.ba.push_back(a.apply(blk));
  for (const auto& blk : b.blocked()) s.bb.push_back(b.apply(blk));
  s.used_db.assign(s.db.size(), false);
  s.used_bb.assign(s.bb.size(), false);

  Renaming gamma;
  if (s.domains(0, gamma)) return gamma;
  return std::nullopt;
}

// ── Printing ────────────────────────────────────────────────────────────────

std::string to_string(const Store& d) {
  if (d.is_aleph()) return "aleph";
  if (d.is_true()) return "true";
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& tok : d.positive_tokens()) {
    if (!first) os << ", ";
    first = false;
    os << to_string(tok);
  }
  os << "}";
  if (!d.blocked().empty()) {
    os << " blocked{";
    first = true;
    for (const auto& blk : d.blocked()) {
      if (!first) os << "; ";
      first = false;
      os << to_string(blk);
    }
    os << "}";
  }
  return os.str();
}

}  // namespace tccp
