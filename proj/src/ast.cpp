// ===== ast.cpp — Labeling and printing of agents =====

#include "tccp/ast.hpp"

#include <algorithm>
#include <sstream>

namespace tccp {

bool operator==(const Label& a, const Label& b) {
  return a.kind == b.kind && a.index == b.index;
}

bool operator<(const Label& a, const Label& b) {
  if (a.index != b.index) return a.index < b.index;
  return static_cast<int>(a.kind) < static_cast<int>(b.kind);
}

std::string to_string(const Label& l) {
  const char* tag = "";
  switch (l.kind) {
    case Label::Kind::Proc: tag = "p"; break;
    case Label::Kind::Hide: tag = "e"; break;
    case Label::Kind::Tell: tag = "t"; break;
    case Label::Kind::Par:  tag = "par"; break;
    case Label::Kind::Now:  tag = "now"; break;
    case Label::Kind::Ask:  tag = "ask"; break;
    case Label::Kind::Stop: tag = "stop"; break;
  }
  return "l" + std::string(tag) + std::to_string(l.index);
}

int Program::decl_index(const std::string& name) const {
  for (std::size_t i = 0; i < decls.size(); ++i)
    if (decls[i].name == name) return static_cast<int>(i);
  return -1;
}

// ── Labeling ────────────────────────────────────────────────────────────────

namespace {

Label::Kind label_kind(const Agent& a) {
  switch (a.kind) {
    case Agent::Kind::Stop:     return Label::Kind::Stop;
    case Agent::Kind::Tell:     return Label::Kind::Tell;
    case Agent::Kind::Choice:   return Label::Kind::Ask;
    case Agent::Kind::Now:      return Label::Kind::Now;
    case Agent::Kind::Parallel: return Label::Kind::Par;
    case Agent::Kind::Hide:     return Label::Kind::Hide;
    case Agent::Kind::Call:     return Label::Kind::Proc;
  }
  return Label::Kind::Stop;
}

void label_agent(Agent& a, int& counter) {
  a.label = Label{label_kind(a), counter++};
  switch (a.kind) {
    case Agent::Kind::Choice:
      for (auto& br : a.branches) label_agent(*br.body, counter);
      break;
    case Agent::Kind::Now:
    case Agent::Kind::Parallel:
      label_agent(*a.left, counter);
      label_agent(*a.right, counter);
      break;
    case Agent::Kind::Hide:
      label_agent(*a.left, counter);
      break;
    default:
      break;
  }
}

}  // namespace

void label_program(Program& p) {
  int counter = 0;
  for (auto& d : p.decls) {
    d.head_label = Label{Label::Kind::Proc, counter++};
    label_agent(*d.body, counter);
  }
  if (p.goal) label_agent(*p.goal, counter);
}

// ── Label index ─────────────────────────────────────────────────────────────

namespace {

void index_agent(const Agent& a, std::map<int, const Agent*>& out) {
  out[a.label.index] = &a;
  switch (a.kind) {
    case Agent::Kind::Choice:
      for (const auto& br : a.branches) index_agent(*br.body, out);
      break;
    case Agent::Kind::Now:
    case Agent::Kind::Parallel:
      index_agent(*a.left, out);
      index_agent(*a.right, out);
      break;
    case Agent::Kind::Hide:
      index_agent(*a.left, out);
      break;
    default:
      break;
  }
}

}  // namespace

LabelIndex::LabelIndex(const Program& p) {
  for (const auto& d : p.decls) {
    heads_[d.head_label.index] = &d;
    index_agent(*d.body, agents_);
  }
  if (p.goal) index_agent(*p.goal, agents_);
}

const Agent* LabelIndex::agent_of(const Label& l) const {
  auto it = agents_.find(l.index);
  return it == agents_.end() ? nullptr : it->second;
}

const Declaration* LabelIndex::decl_of(const Label& l) const {
  auto it = heads_.find(l.index);
  return it == heads_.end() ? nullptr : it->second;
}

std::vector<Label> LabelIndex::all_labels() const {
  std::vector<Label> out;
  for (const auto& [i, d] : heads_) out.push_back(d->head_label);
  for (const auto& [i, a] : agents_) out.push_back(a->label);
  std::sort(out.begin(), out.end());
  return out;
}

// ── Printing ────────────────────────────────────────────────────────────────

namespace {

void print_agent(const Agent& a, std::ostringstream& os, bool labeled) {
  auto lbl = [&](const Agent& node) {
    if (labeled) os << "{" << to_string(node.label) << "} ";
  };
  switch (a.kind) {
    case Agent::Kind::Stop:
      lbl(a);
      os << "stop";
      break;
    case Agent::Kind::Tell:
      lbl(a);
      os << "tell(" << to_string(a.constraint) << ")";
      break;
    case Agent::Kind::Choice: {
      lbl(a);
      for (std::size_t i = 0; i < a.branches.size(); ++i) {
        if (i) os << " + ";
        os << "ask(" << to_string(a.branches[i].guard) << ") -> ";
        print_agent(*a.branches[i].body, os, labeled);
      }
      break;
    }
    case Agent::Kind::Now:
      lbl(a);
      os << "now " << to_string(a.constraint) << " then ";
      print_agent(*a.left, os, labeled);
      os << " else ";
      print_agent(*a.right, os, labeled);
      break;
    case Agent::Kind::Parallel:
      lbl(a);
      os << "(";
      print_agent(*a.left, os, labeled);
      os << " || ";
      print_agent(*a.right, os, labeled);
      os << ")";
      break;
    case Agent::Kind::Hide: {
      lbl(a);
      os << "exists ";
      for (std::size_t i = 0; i < a.hide_vars.size(); ++i) {
        if (i) os << ",";
        os << a.hide_vars[i];
      }
      os << " (";
      print_agent(*a.left, os, labeled);
      os << ")";
      break;
    }
    case Agent::Kind::Call: {
      lbl(a);
      os << a.call_name << "(";
      for (std::size_t i = 0; i < a.call_args.size(); ++i) {
        if (i) os << ",";
        os << a.call_args[i];
      }
      os << ")";
      break;
    }
  }
}

void print_program(const Program& p, std::ostringstream& os, bool labeled) {
  for (const auto& d : p.decls) {
    if (labeled) os << "{" << to_string(d.head_label) << "} ";
    os << d.name << "(";
    for (std::size_t i = 0; i < d.params.size(); ++i) {
      if (i) os << ",";
      os << d.params[i];
    }
    os << ") :- ";
    print_agent(*d.body, os, labeled);
    os << ".\n";
  }
  if (p.goal) {
    print_agent(*p.goal, os, labeled);
    os << "\n";
  }
}

}  // namespace

std::string to_string(const Agent& a) {
  std::ostringstream os;
  print_agent(a, os, false);
  return os.str();
}

std::string to_string(const Program& p) {
  std::ostringstream os;
  print_program(p, os, false);
  return os.str();
}

std::string to_labeled_string(const Program& p) {
  std::ostringstream os;
  print_program(p, os, true);
  return os.str();
}

// ── Free variables ──────────────────────────────────────────────────────────

namespace {

void collect_free(const Agent& a, std::vector<std::string>& bound,
                  std::vector<std::string>& out) {
  auto add = [&](const std::string& v) {
    if (std::find(bound.begin(), bound.end(), v) != bound.end()) return;
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  };
  switch (a.kind) {
    case Agent::Kind::Stop:
      break;
    case Agent::Kind::Tell:
      for (const auto& v : vars_of(a.constraint)) add(v);
      break;
    case Agent::Kind::Choice:
      for (const auto& br : a.branches) {
        for (const auto& v : vars_of(br.guard)) add(v);
        collect_free(*br.body, bound, out);
      }
      break;
    case Agent::Kind::Now:
      for (const auto& v : vars_of(a.constraint)) add(v);
      collect_free(*a.left, bound, out);
      collect_free(*a.right, bound, out);
      break;
    case Agent::Kind::Parallel:
      collect_free(*a.left, bound, out);
      collect_free(*a.right, bound, out);
      break;
    case Agent::Kind::Hide: {
      std::size_t n = bound.size();
      for (const auto& v : a.hide_vars) bound.push_back(v);
      collect_free(*a.left, bound, out);
      bound.resize(n);
      break;
    }
    case Agent::Kind::Call:
      for (const auto& v : a.call_args) add(v);
      break;
  }
}

}  // namespace

std::vector<std::string> free_vars(const Agent& a) {
  std::vector<std::string> bound, out;
  collect_free(a, bound, out);
  return out;
}

}  // namespace tccp
