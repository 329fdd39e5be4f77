// ===== logic.cpp — Temporal formulas: parsing, closure, evaluation =====

#include "tccp/logic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace tccp {

// ── Smart constructors ──────────────────────────────────────────────────────

namespace {

FormulaPtr mk(Formula f) { return std::make_shared<Formula>(std::move(f)); }

bool free_in(const FormulaPtr& f, const std::string& x) {
  switch (f->kind) {
    case Formula::Kind::Atom: {
      for (const auto& v : vars_of(f->conj))
        if (v == x) return true;
      return false;
    }
    case Formula::Kind::Exists:
      return f->var != x && free_in(f->a, x);
    case Formula::Kind::Not:
    case Formula::Kind::Next:
      return free_in(f->a, x);
    case Formula::Kind::And:
    case Formula::Kind::Until:
      return free_in(f->a, x) || free_in(f->b, x);
    default:
      return false;
  }
}

}  // namespace

FormulaPtr f_true() {
  static FormulaPtr t = mk(Formula{Formula::Kind::True, {}, "", nullptr, nullptr});
  return t;
}

FormulaPtr f_false() {
  static FormulaPtr f = mk(Formula{Formula::Kind::False, {}, "", nullptr, nullptr});
  return f;
}

FormulaPtr f_atom(const TokenConj& c) {
  return mk(Formula{Formula::Kind::Atom, c, "", nullptr, nullptr});
}

FormulaPtr f_not(const FormulaPtr& f) {
  if (f->kind == Formula::Kind::Not) return f->a;
  if (f->kind == Formula::Kind::True) return f_false();
  if (f->kind == Formula::Kind::False) return f_true();
  return mk(Formula{Formula::Kind::Not, {}, "", f, nullptr});
}

FormulaPtr f_and(const FormulaPtr& a, const FormulaPtr& b) {
  return mk(Formula{Formula::Kind::And, {}, "", a, b});
}

FormulaPtr f_or(const FormulaPtr& a, const FormulaPtr& b) {
  return f_not(f_and(f_not(a), f_not(b)));
}

FormulaPtr f_exists(const std::string& var, const FormulaPtr& f) {
  if (!free_in(f, var)) return f;
  return mk(Formula{Formula::Kind::Exists, {}, var, f, nullptr});
}

FormulaPtr f_next(const FormulaPtr& f) {
  return mk(Formula{Formula::Kind::Next, {}, "", f, nullptr});
}

FormulaPtr f_until(const FormulaPtr& a, const FormulaPtr& b) {
  return mk(Formula{Formula::Kind::Until, {}, "", a, b});
}

FormulaPtr f_always(const FormulaPtr& f) {
  return f_not(f_until(f_true(), f_not(f)));
}

FormulaPtr f_eventually(const FormulaPtr& f) {
  return f_until(f_true(), f);
}

// ── Structural equality and printing ────────────────────────────────────────

bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return true;
    case Formula::Kind::Atom: {
      if (a->conj.size() != b->conj.size()) return false;
      for (std::size_t i = 0; i < a->conj.size(); ++i)
        if (!equal(a->conj[i].lhs, b->conj[i].lhs) ||
            !equal(a->conj[i].rhs, b->conj[i].rhs))
          return false;
      return true;
    }
    case Formula::Kind::Not:
    case Formula::Kind::Next:
      return formula_equal(a->a, b->a);
    case Formula::Kind::Exists:
      return a->var == b->var && formula_equal(a->a, b->a);
    case Formula::Kind::And:
    case Formula::Kind::Until:
      return formula_equal(a->a, b->a) && formula_equal(a->b, b->b);
  }
  return false;
}

std::string to_string(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::True:
      return "true";
    case Formula::Kind::False:
      return "false";
    case Formula::Kind::Atom: {
      std::ostringstream os;
      for (std::size_t i = 0; i < f->conj.size(); ++i)
        os << (i ? " /\\ " : "") << to_string(f->conj[i]);
      return os.str();
    }
    case Formula::Kind::Not:
      return "~(" + to_string(f->a) + ")";
    case Formula::Kind::And:
      return "(" + to_string(f->a) + " /\\ " + to_string(f->b) + ")";
    case Formula::Kind::Exists: {
      // Fold a quantifier chain into one variable list.
      std::vector<std::string> vars{f->var};
      FormulaPtr body = f->a;
      while (body->kind == Formula::Kind::Exists) {
        vars.push_back(body->var);
        body = body->a;
      }
      std::ostringstream os;
      os << "exists ";
      for (std::size_t i = 0; i < vars.size(); ++i)
        os << (i ? "," : "") << vars[i];
      os << " (" << to_string(body) << ")";
      return os.str();
    }
    case Formula::Kind::Next:
      return "next (" + to_string(f->a) + ")";
    case Formula::Kind::Until:
      return "(" + to_string(f->a) + " U " + to_string(f->b) + ")";
  }
  return "";
}

// ── Parsing ─────────────────────────────────────────────────────────────────

namespace {

enum class FTok : std::uint8_t {
  Ident, Var, Under, LParen, RParen, LBrack, RBrack, Comma, Bar, Eq, Tilde,
  AndOp, OrOp, Arrow, Until, Eof
};

struct FLexeme {
  FTok kind;
  std::string text;
  int line;
  int col;
};

std::vector<FLexeme> flex_all(const std::string& src) {
  std::vector<FLexeme> out;
  std::size_t pos = 0;
  int line = 1, col = 1;
  auto advance = [&] {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  };
  auto ident_char = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
  };
  while (true) {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '%') {
        while (pos < src.size() && src[pos] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        break;
      }
    }
    int l = line, cl = col;
    if (pos >= src.size()) {
      out.push_back(FLexeme{FTok::Eof, "", l, cl});
      return out;
    }
    char c = src[pos];
    auto push = [&](FTok k, std::string text, int n) {
      for (int i = 0; i < n; ++i) advance();
      out.push_back(FLexeme{k, std::move(text), l, cl});
    };
    if (c == '(') { push(FTok::LParen, "(", 1); continue; }
    if (c == ')') { push(FTok::RParen, ")", 1); continue; }
    if (c == '[') { push(FTok::LBrack, "[", 1); continue; }
    if (c == ']') { push(FTok::RBrack, "]", 1); continue; }
    if (c == ',') { push(FTok::Comma, ",", 1); continue; }
    if (c == '|') { push(FTok::Bar, "|", 1); continue; }
    if (c == '=') { push(FTok::Eq, "=", 1); continue; }
    if (c == '~') { push(FTok::Tilde, "~", 1); continue; }
    if (c == '/' && pos + 1 < src.size() && src[pos + 1] == '\\') {
      push(FTok::AndOp, "/\\", 2);
      continue;
    }
    if (c == '\\' && pos + 1 < src.size() && src[pos + 1] == '/') {
      push(FTok::OrOp, "\\/", 2);
      continue;
    }
    if (c == '-' && pos + 1 < src.size() && src[pos + 1] == '>') {
      push(FTok::Arrow, "->", 2);
      continue;
    }
    if (ident_char(c) && !(c >= '0' && c <= '9')) {
      std::string text;
      while (pos < src.size() && ident_char(src[pos])) {
        text += src[pos];
        advance();
      }
      FTok k;
      if (text == "U") k = FTok::Until;
      else if (text == "_") k = FTok::Under;
      else if ((text[0] >= 'A' && text[0] <= 'Z') || text[0] == '_') k = FTok::Var;
      else k = FTok::Ident;
      out.push_back(FLexeme{k, std::move(text), l, cl});
      continue;
    }
    throw FormulaParseError(std::string("unexpected character '") + c + "'",
                            line, col);
  }
}

/// Splits an Exists chain over an Atom; nullopt when f is not such a chain.
std::optional<std::pair<std::vector<std::string>, FormulaPtr>> strip_exists(
    const FormulaPtr& f) {
  std::vector<std::string> vars;
  FormulaPtr g = f;
  while (g->kind == Formula::Kind::Exists) {
    vars.push_back(g->var);
    g = g->a;
  }
  if (g->kind != Formula::Kind::Atom) return std::nullopt;
  return std::make_pair(std::move(vars), g);
}

struct FormulaParser {
  std::vector<FLexeme> toks;
  std::size_t i = 0;
  int anon = 0;
  int merged = 0;

  const FLexeme& peek(std::size_t k = 0) const {
    std::size_t j = i + k;
    return j < toks.size() ? toks[j] : toks.back();
  }
  const FLexeme& next() {
    const FLexeme& l = peek();
    if (l.kind != FTok::Eof) ++i;
    return l;
  }
  bool at(FTok k) const { return peek().kind == k; }
  bool keyword(const std::string& kw) const {
    return at(FTok::Ident) && peek().text == kw;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw FormulaParseError(what, peek().line, peek().col);
  }
  void expect(FTok k, const std::string& what) {
    if (!at(k)) fail("expected " + what);
    next();
  }

  // Terms of atoms (same shape as program constraints).
  TermPtr parse_term() {
    if (at(FTok::Var)) return mk_var(next().text);
    if (at(FTok::Under)) {
      next();
      return mk_var("_A" + std::to_string(anon++));
    }
    if (at(FTok::Ident)) {
      std::string name = next().text;
      if (at(FTok::LParen)) {
        next();
        std::vector<TermPtr> args;
        if (!at(FTok::RParen)) {
          args.push_back(parse_term());
          while (at(FTok::Comma)) {
            next();
            args.push_back(parse_term());
          }
        }
        expect(FTok::RParen, "')'");
        return mk_compound(name, std::move(args));
      }
      return mk_atom(name);
    }
    if (at(FTok::LBrack)) {
      next();
      if (at(FTok::RBrack)) {
        next();
        return nil();
      }
      std::vector<TermPtr> items;
      items.push_back(parse_term());
      while (at(FTok::Comma)) {
        next();
        items.push_back(parse_term());
      }
      TermPtr tail = nil();
      if (at(FTok::Bar)) {
        next();
        tail = parse_term();
      }
      expect(FTok::RBrack, "']'");
      for (auto it = items.rbegin(); it != items.rend(); ++it)
        tail = mk_cons(*it, tail);
      return tail;
    }
    fail("expected a term");
  }

  FormulaPtr parse_atom() {
    TermPtr lhs = parse_term();
    expect(FTok::Eq, "'='");
    TermPtr rhs = parse_term();
    return f_atom({Token{lhs, rhs}});
  }

  FormulaPtr parse_formula() {
    FormulaPtr a = parse_or();
    if (at(FTok::Arrow)) {
      next();
      FormulaPtr b = parse_formula();
      return f_or(f_not(a), f_and(a, b));
    }
    return a;
  }

  FormulaPtr parse_or() {
    FormulaPtr a = parse_and();
    while (at(FTok::OrOp)) {
      next();
      a = f_or(a, parse_and());
    }
    return a;
  }

  FormulaPtr parse_and() {
    FormulaPtr a = parse_until();
    while (at(FTok::AndOp)) {
      next();
      a = f_and(a, parse_until());
    }
    return a;
  }

  FormulaPtr parse_until() {
    FormulaPtr a = parse_unary();
    if (at(FTok::Until)) {
      next();
      return f_until(a, parse_until());
    }
    return a;
  }

  FormulaPtr parse_unary() {
    if (at(FTok::Tilde)) {
      next();
      return f_not(parse_unary());
    }
    if (keyword("always")) {
      next();
      return f_always(parse_unary());
    }
    if (keyword("eventually")) {
      next();
      return f_eventually(parse_unary());
    }
    if (keyword("next")) {
      next();
      return f_next(parse_unary());
    }
    if (keyword("exists")) {
      next();
      std::vector<std::string> vars;
      if (!at(FTok::Var)) fail("expected a variable after 'exists'");
      vars.push_back(next().text);
      while (at(FTok::Comma)) {
        next();
        if (!at(FTok::Var)) fail("expected a variable");
        vars.push_back(next().text);
      }
      FormulaPtr body = parse_unary();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        body = push_exists(*it, body);
      return body;
    }
    if (keyword("true")) {
      next();
      return f_true();
    }
    if (keyword("false")) {
      next();
      return f_false();
    }
    if (at(FTok::LParen)) {
      next();
      FormulaPtr f = parse_formula();
      expect(FTok::RParen, "')'");
      return f;
    }
    return parse_atom();
  }

  /// Fuses two atom chains into one multi-token atom, renaming bound
  /// variables of the right chain that would collide with the left.
  FormulaPtr merge_atomic(const FormulaPtr& a, const FormulaPtr& b) {
    auto ca = strip_exists(a), cb = strip_exists(b);
    std::set<std::string> taken(ca->first.begin(), ca->first.end());
    Subst ren;
    std::vector<std::string> bvars;
    for (const auto& v : cb->first) {
      std::string name = v;
      while (taken.count(name)) name = v + "~" + std::to_string(merged++);
      if (name != v) ren[v] = mk_var(name);
      taken.insert(name);
      bvars.push_back(name);
    }
    TokenConj conj = ca->second->conj;
    TokenConj right = ren.empty() ? cb->second->conj
                                  : substitute(cb->second->conj, ren);
    conj.insert(conj.end(), right.begin(), right.end());
    FormulaPtr out = f_atom(conj);
    for (auto it = bvars.rbegin(); it != bvars.rend(); ++it)
      out = f_exists(*it, out);
    for (auto it = ca->first.rbegin(); it != ca->first.rend(); ++it)
      out = f_exists(*it, out);
    return out;
  }

  /// Normalizes exists x (f): distributes over disjunction, splits over
  /// conjunction, fuses the atomic conjuncts sharing x, and rejects a
  /// quantifier stuck on a temporal operator.
  FormulaPtr push_exists(const std::string& x, const FormulaPtr& f) {
    if (!free_in(f, x)) return f;
    switch (f->kind) {
      case Formula::Kind::Atom:
        return f_exists(x, f);
      case Formula::Kind::Exists:
        return f_exists(x, f);
      case Formula::Kind::Not: {
        if (f->a->kind == Formula::Kind::And) {  // ~(~p /\ ~q) is p \/ q
          FormulaPtr p = f_not(f->a->a);
          FormulaPtr q = f_not(f->a->b);
          return f_or(push_exists(x, p), push_exists(x, q));
        }
        fail("'exists " + x + "' cannot be resolved onto atoms (negation)");
      }
      case Formula::Kind::And: {
        // Flatten the conjunction, fuse the atomic conjuncts mentioning x.
        std::vector<FormulaPtr> leaves;
        std::function<void(const FormulaPtr&)> flatten =
            [&](const FormulaPtr& g) {
              if (g->kind == Formula::Kind::And) {
                flatten(g->a);
                flatten(g->b);
              } else {
                leaves.push_back(g);
              }
            };
        flatten(f);
        std::size_t sharing = 0;
        for (const auto& leaf : leaves)
          if (free_in(leaf, x)) ++sharing;
        FormulaPtr fused;
        std::vector<FormulaPtr> rebuilt;
        std::size_t fused_at = 0;
        for (const auto& leaf : leaves) {
          if (!free_in(leaf, x)) {
            rebuilt.push_back(leaf);
            continue;
          }
          if (sharing == 1) {  // the quantifier descends into the only user
            rebuilt.push_back(push_exists(x, leaf));
            continue;
          }
          if (!strip_exists(leaf))
            fail("'exists " + x + "' spans a non-atomic conjunct");
          if (!fused) {
            fused = leaf;
            fused_at = rebuilt.size();
          } else {
            fused = merge_atomic(fused, leaf);
          }
        }
        if (fused) {
          fused = push_exists(x, fused);  // lands on the fused atom
          rebuilt.insert(
              rebuilt.begin() + static_cast<std::ptrdiff_t>(fused_at), fused);
        }
        FormulaPtr out = rebuilt.front();
        for (std::size_t k = 1; k < rebuilt.size(); ++k)
          out = f_and(out, rebuilt[k]);
        return out;
      }
      case Formula::Kind::Next:
      case Formula::Kind::Until:
        fail("'exists " + x + "' over a temporal operator");
      default:
        return f;  // True/False: x is not free
    }
  }
};

/// Existentially closes the free variables of every atom, innermost at the
/// atom, in first-occurrence order.
FormulaPtr close_atoms(const FormulaPtr& f, std::set<std::string> bound) {
  switch (f->kind) {
    case Formula::Kind::Atom: {
      std::vector<std::string> free;
      for (const auto& v : vars_of(f->conj))
        if (!bound.count(v) &&
            std::find(free.begin(), free.end(), v) == free.end())
          free.push_back(v);
      FormulaPtr out = f;
      for (auto it = free.rbegin(); it != free.rend(); ++it)
        out = f_exists(*it, out);
      return out;
    }
    case Formula::Kind::Exists: {
      bound.insert(f->var);
      FormulaPtr body = close_atoms(f->a, std::move(bound));
      return body == f->a ? f : mk(Formula{Formula::Kind::Exists, {}, f->var,
                                           body, nullptr});
    }
    case Formula::Kind::Not:
    case Formula::Kind::Next: {
      FormulaPtr body = close_atoms(f->a, bound);
      return body == f->a
                 ? f
                 : mk(Formula{f->kind, {}, "", body, nullptr});
    }
    case Formula::Kind::And:
    case Formula::Kind::Until: {
      FormulaPtr a = close_atoms(f->a, bound);
      FormulaPtr b = close_atoms(f->b, bound);
      return (a == f->a && b == f->b)
                 ? f
                 : mk(Formula{f->kind, {}, "", a, b});
    }
    default:
      return f;
  }
}

}  // namespace

FormulaPtr parse_formula(const std::string& source) {
  FormulaParser parser{flex_all(source)};
  FormulaPtr f = parser.parse_formula();
  if (!parser.at(FTok::Eof)) parser.fail("unexpected input after the formula");
  return close_atoms(f, {});
}

// ── Atom evaluation ─────────────────────────────────────────────────────────

bool is_atom_formula(const FormulaPtr& f) {
  FormulaPtr g = f;
  while (g->kind == Formula::Kind::Exists) g = g->a;
  return g->kind == Formula::Kind::Atom;
}

namespace {

/// One-sided-free matching of two store-resolved terms: quantified variables
/// may bind to arbitrary subterms (consistently, via rho); everything else
/// must agree syntactically.
bool match_flex(const Store& store, const std::set<std::string>& flex,
                std::map<std::string, TermPtr>& rho, TermPtr a, TermPtr b) {
  while (a->kind == Term::Kind::Var && flex.count(a->name)) {
    auto it = rho.find(a->name);
    if (it == rho.end()) break;
    a = store.apply(it->second);
  }
  while (b->kind == Term::Kind::Var && flex.count(b->name)) {
    auto it = rho.find(b->name);
    if (it == rho.end()) break;
    b = store.apply(it->second);
  }
  if (a->kind == Term::Kind::Var && flex.count(a->name)) {
    if (b->kind == Term::Kind::Var && b->name == a->name) return true;
    rho[a->name] = b;
    return true;
  }
  if (b->kind == Term::Kind::Var && flex.count(b->name)) {
    rho[b->name] = a;
    return true;
  }
  if (a->kind != b->kind) return false;
  if (a->kind == Term::Kind::Var || a->kind == Term::Kind::Atom)
    return a->name == b->name;
  if (a->name != b->name || a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!match_flex(store, flex, rho, store.apply(a->args[i]),
                    store.apply(b->args[i])))
      return false;
  return true;
}

bool solve_tokens(const Store& store, const std::set<std::string>& flex,
                  const TokenConj& conj, std::size_t i,
                  std::map<std::string, TermPtr> rho) {
  if (i == conj.size()) return true;
  const Token& tok = conj[i];

  // A quantified variable standing as a whole token side must name a store
  // variable (the anchor); enumerate the candidates.
  std::vector<std::string> anchors;
  for (const TermPtr& side : {tok.lhs, tok.rhs})
    if (side->kind == Term::Kind::Var && flex.count(side->name) &&
        !rho.count(side->name) &&
        std::find(anchors.begin(), anchors.end(), side->name) == anchors.end())
      anchors.push_back(side->name);

  std::function<bool(std::size_t, std::map<std::string, TermPtr>)> place =
      [&](std::size_t k, std::map<std::string, TermPtr> r) -> bool {
    if (k == anchors.size()) {
      Subst s;
      for (const auto& [v, t] : r) s[v] = t;
      TermPtr a = store.apply(substitute(tok.lhs, s));
      TermPtr b = store.apply(substitute(tok.rhs, s));
      std::map<std::string, TermPtr> r2 = r;
      if (!match_flex(store, flex, r2, a, b)) return false;
      return solve_tokens(store, flex, conj, i + 1, std::move(r2));
    }
    for (const auto& w : store.var_order()) {
      std::map<std::string, TermPtr> r2 = r;
      r2[anchors[k]] = mk_var(w);
      if (place(k + 1, std::move(r2))) return true;
    }
    return false;
  };
  return place(0, std::move(rho));
}

}  // namespace

bool atom_holds(const Store& store, const FormulaPtr& f) {
  if (store.is_aleph()) return true;
  std::set<std::string> flex;
  FormulaPtr g = f;
  while (g->kind == Formula::Kind::Exists) {
    flex.insert(g->var);
    g = g->a;
  }
  if (g->kind != Formula::Kind::Atom)
    throw std::invalid_argument("atom_holds needs an atom formula");
  return solve_tokens(store, flex, g->conj, 0, {});
}

// ── Closure ─────────────────────────────────────────────────────────────────

int ClosureSet::index_of(const FormulaPtr& f) const {
  for (std::size_t i = 0; i < members.size(); ++i)
    if (formula_equal(members[i], f)) return static_cast<int>(i);
  return -1;
}

ClosureSet closure(const FormulaPtr& f) {
  ClosureSet cl;
  std::vector<FormulaPtr> work;
  auto add = [&](const FormulaPtr& g) {
    if (cl.contains(g)) return;
    cl.members.push_back(g);
    work.push_back(g);
  };

  // Subformula closure: structural parts, negations stripped, the until
  // unfolded to its next formula.  Quantified atoms are atomic units.
  add(f);
  while (!work.empty()) {
    FormulaPtr g = work.front();
    work.erase(work.begin());
    switch (g->kind) {
      case Formula::Kind::Not:
        add(g->a);
        break;
      case Formula::Kind::And:
        add(g->a);
        add(g->b);
        break;
      case Formula::Kind::Next:
        add(g->a);
        break;
      case Formula::Kind::Until:
        add(g->a);
        add(g->b);
        add(f_next(g));  // the unfolding's next formula
        break;
      default:
        break;  // atoms (quantified or not), true, false
    }
  }

  // One negation completion (modulo double negation), then the negated-next
  // members get their pushed-in form: ~next phi cannot be evaluated from
  // parts, next ~phi can.  The pushed forms introduce nothing further: their
  // operands are already present.
  std::size_t base = cl.members.size();
  for (std::size_t i = 0; i < base; ++i) add(f_not(cl.members[i]));
  std::size_t negated = cl.members.size();
  for (std::size_t i = 0; i < negated; ++i) {
    const FormulaPtr& g = cl.members[i];
    if (g->kind == Formula::Kind::Not && g->a->kind == Formula::Kind::Next)
      add(f_next(f_not(g->a->a)));
  }
  for (std::size_t i = 0; i < cl.members.size(); ++i) {
    const FormulaPtr& g = cl.members[i];
    if (is_atom_formula(g)) cl.atoms.push_back(static_cast<int>(i));
    if (g->kind == Formula::Kind::Next) cl.nexts.push_back(static_cast<int>(i));
    if (g->kind == Formula::Kind::Until)
      cl.untils.push_back(static_cast<int>(i));
  }
  return cl;
}

std::size_t op_count(const FormulaPtr& f) {
  switch (f->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom:
      return 1;
    case Formula::Kind::Exists:
      return op_count(f->a);  // a quantified atom still counts once
    case Formula::Kind::Not:
    case Formula::Kind::Next:
      return 1 + op_count(f->a);
    case Formula::Kind::And:
    case Formula::Kind::Until:
      return 1 + op_count(f->a) + op_count(f->b);
  }
  return 0;
}

// ── Finite-prefix satisfaction ──────────────────────────────────────────────

bool holds(const std::vector<Store>& seq, const FormulaPtr& f,
           std::size_t pos) {
  if (pos >= seq.size()) return false;
  if (is_atom_formula(f)) return atom_holds(seq[pos], f);
  switch (f->kind) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Not:
      return !holds(seq, f->a, pos);
    case Formula::Kind::And:
      return holds(seq, f->a, pos) && holds(seq, f->b, pos);
    case Formula::Kind::Next:
      return pos + 1 < seq.size() && holds(seq, f->a, pos + 1);
    case Formula::Kind::Until: {
      for (std::size_t k = pos; k < seq.size(); ++k) {
        if (holds(seq, f->b, k)) return true;
        if (!holds(seq, f->a, k)) return false;
      }
      return false;
    }
    default:
      return false;
  }
}

}  // namespace tccp
