// ===== term.cpp — Terms, tokens, renamings =====

#include "tccp/term.hpp"

#include <algorithm>
#include <sstream>

namespace tccp {

// ── Constructors ────────────────────────────────────────────────────────────

TermPtr mk_var(const std::string& name) {
  return std::make_shared<Term>(Term::Kind::Var, name, std::vector<TermPtr>{});
}

TermPtr mk_atom(const std::string& name) {
  return std::make_shared<Term>(Term::Kind::Atom, name, std::vector<TermPtr>{});
}

TermPtr mk_cons(const TermPtr& head, const TermPtr& tail) {
  return std::make_shared<Term>(Term::Kind::Cons, "",
                                std::vector<TermPtr>{head, tail});
}

TermPtr mk_compound(const std::string& functor, std::vector<TermPtr> args) {
  return std::make_shared<Term>(Term::Kind::Compound, functor, std::move(args));
}

TermPtr mk_anon() {
  return std::make_shared<Term>(Term::Kind::Anonymous, "_", std::vector<TermPtr>{});
}

TermPtr nil() {
  static const TermPtr n = mk_atom("[]");
  return n;
}

bool is_var(const TermPtr& t) { return t->kind == Term::Kind::Var; }

bool is_nil(const TermPtr& t) {
  return t->kind == Term::Kind::Atom && t->name == "[]";
}

// ── Structural operations ───────────────────────────────────────────────────

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind || a->name != b->name || a->args.size() != b->args.size())
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

void vars_of(const TermPtr& t, std::vector<std::string>& out) {
  if (t->kind == Term::Kind::Var) {
    if (std::find(out.begin(), out.end(), t->name) == out.end())
      out.push_back(t->name);
    return;
  }
  for (const auto& a : t->args) vars_of(a, out);
}

std::vector<std::string> vars_of(const TermPtr& t) {
  std::vector<std::string> out;
  vars_of(t, out);
  return out;
}

bool mentions(const TermPtr& t, const std::string& var) {
  if (t->kind == Term::Kind::Var) return t->name == var;
  for (const auto& a : t->args)
    if (mentions(a, var)) return true;
  return false;
}

TermPtr substitute(const TermPtr& t, const Subst& s) {
  switch (t->kind) {
    case Term::Kind::Var: {
      auto it = s.find(t->name);
      return it == s.end() ? t : it->second;
    }
    case Term::Kind::Atom:
    case Term::Kind::Anonymous:
      return t;
    default: {
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      bool changed = false;
      for (const auto& a : t->args) {
        args.push_back(substitute(a, s));
        changed = changed || args.back().get() != a.get();
      }
      if (!changed) return t;
      return std::make_shared<Term>(t->kind, t->name, std::move(args));
    }
  }
}

namespace {

void print_term(const TermPtr& t, std::ostringstream& os) {
  switch (t->kind) {
    case Term::Kind::Var:
    case Term::Kind::Atom:
      os << t->name;
      break;
    case Term::Kind::Anonymous:
      os << "_";
      break;
    case Term::Kind::Cons: {
      os << "[";
      print_term(t->args[0], os);
      TermPtr tail = t->args[1];
      while (tail->kind == Term::Kind::Cons) {
        os << ",";
        print_term(tail->args[0], os);
        tail = tail->args[1];
      }
      if (!is_nil(tail)) {
        os << "|";
        print_term(tail, os);
      }
      os << "]";
      break;
    }
    case Term::Kind::Compound: {
      os << t->name << "(";
      for (std::size_t i = 0; i < t->args.size(); ++i) {
        if (i) os << ",";
        print_term(t->args[i], os);
      }
      os << ")";
      break;
    }
  }
}

}  // namespace

std::string to_string(const TermPtr& t) {
  std::ostringstream os;
  print_term(t, os);
  return os.str();
}

// ── Tokens ──────────────────────────────────────────────────────────────────

Token mk_token(const TermPtr& lhs, const TermPtr& rhs) { return Token{lhs, rhs}; }

bool equal(const Token& a, const Token& b) {
  return equal(a.lhs, b.lhs) && equal(a.rhs, b.rhs);
}

void vars_of(const Token& t, std::vector<std::string>& out) {
  vars_of(t.lhs, out);
  vars_of(t.rhs, out);
}

void vars_of(const TokenConj& c, std::vector<std::string>& out) {
  for (const auto& t : c) vars_of(t, out);
}

std::vector<std::string> vars_of(const TokenConj& c) {
  std::vector<std::string> out;
  vars_of(c, out);
  return out;
}

Token substitute(const Token& t, const Subst& s) {
  return Token{substitute(t.lhs, s), substitute(t.rhs, s)};
}

TokenConj substitute(const TokenConj& c, const Subst& s) {
  TokenConj out;
  out.reserve(c.size());
  for (const auto& t : c) out.push_back(substitute(t, s));
  return out;
}

std::string to_string(const Token& t) {
  return to_string(t.lhs) + "=" + to_string(t.rhs);
}

std::string to_string(const TokenConj& c) {
  std::ostringstream os;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) os << ", ";
    os << to_string(c[i]);
  }
  return os.str();
}

// ── Renamings ───────────────────────────────────────────────────────────────

bool Renaming::add(const std::string& from, const std::string& to) {
  auto f = pairs_.find(from);
  if (f != pairs_.end()) return f->second == to;
  auto r = reverse_.find(to);
  if (r != reverse_.end()) return r->second == from;
  pairs_[from] = to;
  reverse_[to] = from;
  return true;
}

bool Renaming::maps(const std::string& from) const { return pairs_.count(from) > 0; }
bool Renaming::targets(const std::string& to) const { return reverse_.count(to) > 0; }

const std::string& Renaming::apply(const std::string& var) const {
  auto it = pairs_.find(var);
  return it == pairs_.end() ? var : it->second;
}

TermPtr Renaming::apply(const TermPtr& t) const {
  switch (t->kind) {
    case Term::Kind::Var: {
      auto it = pairs_.find(t->name);
      return it == pairs_.end() ? t : mk_var(it->second);
    }
    case Term::Kind::Atom:
    case Term::Kind::Anonymous:
      return t;
    default: {
      std::vector<TermPtr> args;
      args.reserve(t->args.size());
      bool changed = false;
      for (const auto& a : t->args) {
        args.push_back(apply(a));
        changed = changed || args.back().get() != a.get();
      }
      if (!changed) return t;
      return std::make_shared<Term>(t->kind, t->name, std::move(args));
    }
  }
}

Token Renaming::apply(const Token& t) const { return Token{apply(t.lhs), apply(t.rhs)}; }

TokenConj Renaming::apply(const TokenConj& c) const {
  TokenConj out;
  out.reserve(c.size());
  for (const auto& t : c) out.push_back(apply(t));
  return out;
}

Renaming Renaming::inverse() const {
  Renaming inv;
  inv.pairs_ = reverse_;
  inv.reverse_ = pairs_;
  return inv;
}

bool Renaming::is_identity() const {
  for (const auto& [from, to] : pairs_)
    if (from != to) return false;
  return true;
}

std::string to_string(const Renaming& r) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [from, to] : r.pairs()) {
    if (!first) os << ", ";
    first = false;
    os << from << "/" << to;
  }
  os << "}";
  return os.str();
}

// ── Variable matching ───────────────────────────────────────────────────────

bool VarMatcher::add(const std::string& a, const std::string& b) {
  auto f = fwd_.find(a);
  if (f != fwd_.end()) return f->second == b;
  if (rev_.count(b)) return false;
  fwd_.emplace(a, b);
  rev_.emplace(b, a);
  trail_.push_back(a);
  return true;
}

bool VarMatcher::term(const TermPtr& a, const TermPtr& b) {
  if (a->kind == Term::Kind::Var || b->kind == Term::Kind::Var) {
    if (a->kind != b->kind) return false;
    return add(a->name, b->name);
  }
  if (a->kind != b->kind || a->name != b->name ||
      a->args.size() != b->args.size())
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!term(a->args[i], b->args[i])) return false;
  return true;
}

bool VarMatcher::token(const Token& a, const Token& b) {
  return term(a.lhs, b.lhs) && term(a.rhs, b.rhs);
}

void VarMatcher::undo(std::size_t mark) {
  while (trail_.size() > mark) {
    const std::string a = trail_.back();
    trail_.pop_back();
    auto it = fwd_.find(a);
    rev_.erase(it->second);
    fwd_.erase(it);
  }
}

Renaming VarMatcher::renaming() const {
  Renaming r;
  for (const auto& [a, b] : fwd_) r.add(a, b);
  return r;
}

// ── Fresh variables ─────────────────────────────────────────────────────────

std::string FreshVarGen::fresh(const std::string& base) {
  return base_name(base) + "'" + std::to_string(++counter_);
}

std::string base_name(const std::string& var) {
  auto pos = var.find('\'');
  return pos == std::string::npos ? var : var.substr(0, pos);
}

}  // namespace tccp
