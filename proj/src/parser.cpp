// ===== parser.cpp — Lexer and recursive-descent parser for programs =====

#include "tccp/parser.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

namespace tccp {

namespace {

enum class Tok : std::uint8_t {
  Ident, Var, Under, LParen, RParen, LBrack, RBrack, Comma, Dot, Bar, Eq,
  Plus, Turnstile, Arrow, ParOp, AndOp, Eof
};

struct Lexeme {
  Tok kind;
  std::string text;
  int line;
  int col;
};

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1;
  int col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line, col);
  }

  char cur() const { return pos < src.size() ? src[pos] : '\0'; }
  char ahead() const { return pos + 1 < src.size() ? src[pos + 1] : '\0'; }

  void advance() {
    if (cur() == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  static bool ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_';
  }

  std::vector<Lexeme> all() {
    std::vector<Lexeme> out;
    while (true) {
      while (pos < src.size()) {
        if (cur() == '%') {
          while (pos < src.size() && cur() != '\n') advance();
        } else if (cur() == ' ' || cur() == '\t' || cur() == '\r' || cur() == '\n') {
          advance();
        } else {
          break;
        }
      }
      int l = line, c = col;
      auto push = [&](Tok k, std::string text, int chars) {
        for (int i = 0; i < chars; ++i) advance();
        out.push_back(Lexeme{k, std::move(text), l, c});
      };
      if (pos >= src.size()) {
        out.push_back(Lexeme{Tok::Eof, "", l, c});
        return out;
      }
      char ch = cur();
      if (ch == '(') { push(Tok::LParen, "(", 1); continue; }
      if (ch == ')') { push(Tok::RParen, ")", 1); continue; }
      if (ch == '[') { push(Tok::LBrack, "[", 1); continue; }
      if (ch == ']') { push(Tok::RBrack, "]", 1); continue; }
      if (ch == ',') { push(Tok::Comma, ",", 1); continue; }
      if (ch == '.') { push(Tok::Dot, ".", 1); continue; }
      if (ch == '=') { push(Tok::Eq, "=", 1); continue; }
      if (ch == '+') { push(Tok::Plus, "+", 1); continue; }
      if (ch == '|') {
        if (ahead() == '|') { push(Tok::ParOp, "||", 2); continue; }
        push(Tok::Bar, "|", 1);
        continue;
      }
      if (ch == ':' && ahead() == '-') { push(Tok::Turnstile, ":-", 2); continue; }
      if (ch == '-' && ahead() == '>') { push(Tok::Arrow, "->", 2); continue; }
      if (ch == '/' && ahead() == '\\') { push(Tok::AndOp, "/\\", 2); continue; }
      if (ident_char(ch) && !(ch >= '0' && ch <= '9')) {
        std::string text;
        while (pos < src.size() && ident_char(cur())) {
          text += cur();
          advance();
        }
        Tok k;
        if (text == "_") k = Tok::Under;
        else if ((text[0] >= 'A' && text[0] <= 'Z') || text[0] == '_') k = Tok::Var;
        else k = Tok::Ident;
        out.push_back(Lexeme{k, std::move(text), l, c});
        continue;
      }
      fail(std::string("unexpected character '") + ch + "'");
    }
  }
};

struct Parser {
  std::vector<Lexeme> toks;
  std::size_t i = 0;
  ParseOptions opts;
  std::vector<std::tuple<Agent*, int, int>> calls;  // for post-resolution

  const Lexeme& peek(std::size_t k = 0) const {
    std::size_t j = i + k;
    return j < toks.size() ? toks[j] : toks.back();
  }

  const Lexeme& next() {
    const Lexeme& l = peek();
    if (l.kind != Tok::Eof) ++i;
    return l;
  }

  bool at(Tok k) const { return peek().kind == k; }

  [[noreturn]] void fail(const std::string& what) const {
    const Lexeme& l = peek();
    throw ParseError(what, l.line, l.col);
  }

  void expect(Tok k, const std::string& what) {
    if (!at(k)) fail("expected " + what);
    next();
  }

  bool keyword(const std::string& kw) const {
    return at(Tok::Ident) && peek().text == kw;
  }

  // ── Terms and tokens ──────────────────────────────────────────────────────

  TermPtr parse_term() {
    if (at(Tok::Var)) return mk_var(next().text);
    if (at(Tok::Under)) {
      next();
      return mk_anon();
    }
    if (at(Tok::Ident)) {
      std::string name = next().text;
      if (at(Tok::LParen)) {
        next();
        std::vector<TermPtr> args;
        if (!at(Tok::RParen)) {
          args.push_back(parse_term());
          while (at(Tok::Comma)) {
            next();
            args.push_back(parse_term());
          }
        }
        expect(Tok::RParen, "')'");
        return mk_compound(name, std::move(args));
      }
      return mk_atom(name);
    }
    if (at(Tok::LBrack)) {
      next();
      if (at(Tok::RBrack)) {
        next();
        return nil();
      }
      std::vector<TermPtr> items;
      items.push_back(parse_term());
      while (at(Tok::Comma)) {
        next();
        items.push_back(parse_term());
      }
      TermPtr tail = nil();
      if (at(Tok::Bar)) {
        next();
        tail = parse_term();
      }
      expect(Tok::RBrack, "']'");
      for (auto it = items.rbegin(); it != items.rend(); ++it)
        tail = mk_cons(*it, tail);
      return tail;
    }
    fail("expected a term");
  }

  Token parse_token() {
    TermPtr lhs = parse_term();
    expect(Tok::Eq, "'='");
    TermPtr rhs = parse_term();
    return Token{lhs, rhs};
  }

  TokenConj parse_conj() {
    TokenConj c;
    c.push_back(parse_token());
    while (at(Tok::Comma) || at(Tok::AndOp)) {
      next();
      c.push_back(parse_token());
    }
    return c;
  }

  /// A now guard: either a bare conjunction or a parenthesized one.
  TokenConj parse_guard() {
    if (at(Tok::LParen)) {
      next();
      TokenConj c = parse_conj();
      expect(Tok::RParen, "')'");
      return c;
    }
    return parse_conj();
  }

  // ── Agents ────────────────────────────────────────────────────────────────

  AgentPtr parse_agent(int now_depth) {
    AgentPtr left = parse_choice(now_depth);
    if (at(Tok::ParOp)) {
      next();
      AgentPtr right = parse_agent(now_depth);
      auto a = std::make_shared<Agent>();
      a->kind = Agent::Kind::Parallel;
      a->left = left;
      a->right = right;
      return a;
    }
    return left;
  }

  AgentPtr parse_choice(int now_depth) {
    if (!keyword("ask")) return parse_unary(now_depth);
    auto a = std::make_shared<Agent>();
    a->kind = Agent::Kind::Choice;
    while (true) {
      if (!keyword("ask")) fail("expected 'ask' after '+'");
      next();
      expect(Tok::LParen, "'('");
      TokenConj guard = parse_conj();
      expect(Tok::RParen, "')'");
      expect(Tok::Arrow, "'->'");
      AgentPtr body = parse_unary(now_depth);
      a->branches.push_back(AskBranch{std::move(guard), body});
      if (!at(Tok::Plus)) break;
      next();
    }
    return a;
  }

  AgentPtr parse_unary(int now_depth) {
    if (keyword("stop")) {
      next();
      auto a = std::make_shared<Agent>();
      a->kind = Agent::Kind::Stop;
      return a;
    }
    if (keyword("tell")) {
      next();
      expect(Tok::LParen, "'('");
      auto a = std::make_shared<Agent>();
      a->kind = Agent::Kind::Tell;
      a->constraint = parse_conj();
      expect(Tok::RParen, "')'");
      return a;
    }
    if (keyword("now")) {
      const Lexeme& kw = peek();
      if (now_depth + 1 > opts.max_now_depth)
        throw ParseError("now agents nested deeper than " +
                             std::to_string(opts.max_now_depth),
                         kw.line, kw.col);
      next();
      auto a = std::make_shared<Agent>();
      a->kind = Agent::Kind::Now;
      a->constraint = parse_guard();
      if (!keyword("then")) fail("expected 'then'");
      next();
      a->left = parse_unary(now_depth + 1);
      if (!keyword("else")) fail("expected 'else'");
      next();
      a->right = parse_unary(now_depth + 1);
      return a;
    }
    if (keyword("exists")) {
      next();
      auto a = std::make_shared<Agent>();
      a->kind = Agent::Kind::Hide;
      if (!at(Tok::Var)) fail("expected a variable after 'exists'");
      a->hide_vars.push_back(next().text);
      while (at(Tok::Comma)) {
        next();
        if (!at(Tok::Var)) fail("expected a variable");
        a->hide_vars.push_back(next().text);
      }
      a->left = parse_unary(now_depth);
      return a;
    }
    if (at(Tok::LParen)) {
      next();
      AgentPtr a = parse_agent(now_depth);
      expect(Tok::RParen, "')'");
      return a;
    }
    if (at(Tok::Ident)) {
      const Lexeme& name = next();
      auto a = std::make_shared<Agent>();
      a->kind = Agent::Kind::Call;
      a->call_name = name.text;
      if (at(Tok::LParen)) {
        next();
        if (!at(Tok::RParen)) {
          while (true) {
            if (at(Tok::Var)) {
              a->call_args.push_back(next().text);
            } else if (at(Tok::Under)) {
              next();
              a->call_args.push_back("_");  // normalized to a fresh name below
            } else {
              fail("expected a variable as call argument");
            }
            if (!at(Tok::Comma)) break;
            next();
          }
        }
        expect(Tok::RParen, "')'");
      }
      calls.emplace_back(a.get(), name.line, name.col);
      return a;
    }
    fail("expected an agent");
  }

  // ── Top level ─────────────────────────────────────────────────────────────

  bool at_declaration() const {
    if (!(at(Tok::Ident) && peek(1).kind == Tok::LParen)) return false;
    std::size_t j = i + 2;
    while (j < toks.size() &&
           (toks[j].kind == Tok::Var || toks[j].kind == Tok::Comma))
      ++j;
    return j + 1 < toks.size() && toks[j].kind == Tok::RParen &&
           toks[j + 1].kind == Tok::Turnstile;
  }

  Program parse() {
    Program p;
    while (at_declaration()) {
      Declaration d;
      d.name = next().text;
      expect(Tok::LParen, "'('");
      if (!at(Tok::RParen)) {
        while (true) {
          if (!at(Tok::Var)) fail("expected a parameter variable");
          d.params.push_back(next().text);
          if (!at(Tok::Comma)) break;
          next();
        }
      }
      expect(Tok::RParen, "')'");
      expect(Tok::Turnstile, "':-'");
      d.body = parse_agent(0);
      expect(Tok::Dot, "'.' after declaration");
      p.decls.push_back(std::move(d));
    }
    if (!at(Tok::Eof)) {
      p.goal = parse_agent(0);
      if (at(Tok::Dot)) next();
    }
    if (!at(Tok::Eof)) fail("unexpected input after the goal");
    return p;
  }
};

// ── Post-parse normalization ─────────────────────────────────────────────────

void collect_names(const Agent& a, std::set<std::string>& names) {
  auto note_conj = [&](const TokenConj& c) {
    for (const auto& v : vars_of(c)) names.insert(v);
  };
  switch (a.kind) {
    case Agent::Kind::Tell:
      note_conj(a.constraint);
      break;
    case Agent::Kind::Choice:
      for (const auto& br : a.branches) {
        note_conj(br.guard);
        collect_names(*br.body, names);
      }
      break;
    case Agent::Kind::Now:
      note_conj(a.constraint);
      collect_names(*a.left, names);
      collect_names(*a.right, names);
      break;
    case Agent::Kind::Parallel:
      collect_names(*a.left, names);
      collect_names(*a.right, names);
      break;
    case Agent::Kind::Hide:
      for (const auto& v : a.hide_vars) names.insert(v);
      collect_names(*a.left, names);
      break;
    case Agent::Kind::Call:
      for (const auto& v : a.call_args) names.insert(v);
      break;
    default:
      break;
  }
}

struct AnonNormalizer {
  std::set<std::string> used;
  int counter = 0;

  std::string fresh() {
    std::string name;
    do {
      name = "_G" + std::to_string(counter++);
    } while (used.count(name));
    used.insert(name);
    return name;
  }

  TermPtr term(const TermPtr& t) {
    switch (t->kind) {
      case Term::Kind::Anonymous:
        return mk_var(fresh());
      case Term::Kind::Var:
      case Term::Kind::Atom:
        return t;
      default: {
        std::vector<TermPtr> args;
        args.reserve(t->args.size());
        for (const auto& a : t->args) args.push_back(term(a));
        return std::make_shared<Term>(t->kind, t->name, std::move(args));
      }
    }
  }

  void conj(TokenConj& c) {
    for (auto& tok : c) {
      tok.lhs = term(tok.lhs);
      tok.rhs = term(tok.rhs);
    }
  }

  void agent(Agent& a) {
    switch (a.kind) {
      case Agent::Kind::Tell:
        conj(a.constraint);
        break;
      case Agent::Kind::Choice:
        for (auto& br : a.branches) {
          conj(br.guard);
          agent(*br.body);
        }
        break;
      case Agent::Kind::Now:
        conj(a.constraint);
        agent(*a.left);
        agent(*a.right);
        break;
      case Agent::Kind::Parallel:
        agent(*a.left);
        agent(*a.right);
        break;
      case Agent::Kind::Hide:
        agent(*a.left);
        break;
      case Agent::Kind::Call:
        for (auto& v : a.call_args)
          if (v == "_") v = fresh();
        break;
      default:
        break;
    }
  }
};

}  // namespace

Program parse_program(const std::string& source, const ParseOptions& opts) {
  Lexer lex(source);
  Parser parser;
  parser.toks = lex.all();
  parser.opts = opts;
  Program p = parser.parse();

  std::set<std::string> names;
  for (const auto& d : p.decls) {
    for (const auto& v : d.params) names.insert(v);
    collect_names(*d.body, names);
  }
  if (p.goal) collect_names(*p.goal, names);

  AnonNormalizer anon{std::move(names)};
  for (auto& d : p.decls) anon.agent(*d.body);
  if (p.goal) anon.agent(*p.goal);

  for (auto& [call, line, col] : parser.calls) {
    int idx = p.decl_index(call->call_name);
    if (idx < 0)
      throw ParseError("call to undeclared procedure '" + call->call_name + "'",
                       line, col);
    if (p.decls[idx].params.size() != call->call_args.size())
      throw ParseError("procedure '" + call->call_name + "' expects " +
                           std::to_string(p.decls[idx].params.size()) +
                           " arguments, got " +
                           std::to_string(call->call_args.size()),
                       line, col);
    call->call_decl = idx;
  }

  label_program(p);
  return p;
}

TokenConj parse_conj(const std::string& source) {
  Lexer lex(source);
  Parser parser;
  parser.toks = lex.all();
  TokenConj c = parser.parse_conj();
  if (!parser.at(Tok::Eof)) parser.fail("unexpected input after the constraint");
  AnonNormalizer anon;
  for (const auto& v : vars_of(c)) anon.used.insert(v);
  anon.conj(c);
  return c;
}

}  // namespace tccp
