// ===== tools/tccp_mc_main.cpp — the tccp-mc command line =====
//
// Subcommands:
//
//   check PROGRAM --property FILE   verify a temporal property; prints the
//                                   verdict and, for VIOLATED, the witness
//   build PROGRAM                   build and print the program's structure
//   simulate PROGRAM                print the bounded operational traces
//   closure PROPERTY                print the closure of the negated property
//
// Every report starts with a versioned header line so downstream consumers
// can detect format changes.  Output is deterministic: identical inputs and
// flags produce byte-identical reports.
//
// Exit codes: 0 satisfied, 1 violated, 2 inconclusive; 10 usage error,
// 11 unreadable file, 12 program parse error, 13 property parse error,
// 14 resource limit or internal error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tccp/ast.hpp"
#include "tccp/logic.hpp"
#include "tccp/mcgraph.hpp"
#include "tccp/parser.hpp"
#include "tccp/semantics.hpp"
#include "tccp/store.hpp"
#include "tccp/structure.hpp"

namespace {

constexpr const char* kHeader = "tccp-mc report v1";

constexpr int kExitUsage = 10;
constexpr int kExitFile = 11;
constexpr int kExitProgramParse = 12;
constexpr int kExitPropertyParse = 13;
constexpr int kExitResource = 14;

struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileError("cannot write file: " + path);
  out << text;
}

tccp::Program load_program(const std::string& path) {
  return tccp::parse_program(read_file(path));
}

tccp::FormulaPtr load_property(const std::string& path) {
  return tccp::parse_formula(read_file(path));
}

// ── Report pieces ────────────────────────────────────────────────────────────

std::string labels_to_string(const std::vector<tccp::Label>& labels) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& l : labels) {
    os << (first ? "" : ", ") << tccp::to_string(l);
    first = false;
  }
  os << "}";
  return os.str();
}

void print_structure(std::ostream& os, const tccp::TccpStructure& z) {
  os << "states: " << z.states.size() << "\n";
  os << "arcs: " << z.arcs.size() << "\n";
  os << "initial:";
  for (int i : z.initial) os << " s" << i;
  os << "\n";
  os << "truncated: " << (z.truncated ? "yes" : "no") << "\n";
  for (std::size_t i = 0; i < z.states.size(); ++i) {
    const tccp::TccpState& s = z.states[i];
    os << "state s" << i << "  depth " << s.depth << "\n";
    os << "  C: " << tccp::to_string(s.store) << "\n";
    os << "  T: " << labels_to_string(s.labels) << "\n";
  }
  for (const tccp::Arc& a : z.arcs) {
    os << "arc s" << a.from << " -> s" << a.to;
    if (!a.renaming.empty()) os << "  renaming " << tccp::to_string(a.renaming);
    os << "\n";
  }
}

/// One witness position: the structure state, the accumulated store, and the
/// until-obligations held at that position.
void print_position(std::ostream& os, const tccp::MCGraph& g, int node) {
  const tccp::MCNode& n = g.nodes[static_cast<std::size_t>(node)];
  os << "state s" << n.state << "  store: " << tccp::to_string(n.acc_store)
     << "\n";
  os << "      holds:";
  bool any = false;
  for (int ui : g.cl.untils)
    if (n.q[static_cast<std::size_t>(ui)]) {
      os << (any ? ", " : " ")
         << tccp::to_string(g.cl.members[static_cast<std::size_t>(ui)]);
      any = true;
    }
  if (!any) os << " (no pending obligation)";
  os << "\n";
}

void print_witness(std::ostream& os, const tccp::MCGraph& g,
                   const tccp::Witness& w) {
  os << "counterexample prefix:\n";
  for (std::size_t i = 0; i < w.prefix.size(); ++i) {
    os << "  [" << i << "] ";
    print_position(os, g, w.prefix[i]);
  }
  os << "looping component (revisited forever):\n";
  for (std::size_t i = 0; i < w.scc.size(); ++i) {
    os << "  (" << i << ") ";
    print_position(os, g, w.scc[i]);
  }
}

const char* verdict_name(const tccp::Verdict& v) {
  switch (v.kind) {
    case tccp::Verdict::Kind::Satisfied:
      return "SATISFIED";
    case tccp::Verdict::Kind::Violated:
      return "VIOLATED";
    case tccp::Verdict::Kind::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

// ── Subcommand bodies ────────────────────────────────────────────────────────

int run_check(const std::string& program_path, const std::string& property_path,
              int time_limit, std::size_t max_states,
              const std::optional<std::string>& dot_out) {
  tccp::Program p = load_program(program_path);
  tccp::FormulaPtr property = load_property(property_path);

  tccp::BuildLimits bl;
  bl.time_limit = time_limit;
  bl.max_states = max_states;
  tccp::TccpStructure z = tccp::construct_program(p, bl);

  tccp::CheckLimits cl;
  cl.time_limit = time_limit;
  cl.max_states = max_states;
  tccp::MCGraph g = tccp::build_graph(tccp::f_not(property), z, p, cl);
  tccp::Verdict v = tccp::search_graph(g);

  std::cout << kHeader << "\n";
  std::cout << "command: check\n";
  std::cout << "program: " << program_path << "\n";
  std::cout << "property: " << tccp::to_string(property) << "\n";
  std::cout << "time limit: " << time_limit << "\n";
  std::cout << "verdict: " << verdict_name(v) << "\n";
  std::cout << "detail: " << v.detail << "\n";
  if (v.witness) print_witness(std::cout, g, *v.witness);
  if (dot_out) write_file(*dot_out, tccp::to_dot(g));
  return tccp::exit_code(v);
}

int run_build(const std::string& program_path, int time_limit,
              std::size_t max_states, const std::optional<std::string>& dot_out) {
  tccp::Program p = load_program(program_path);
  tccp::BuildLimits bl;
  bl.time_limit = time_limit;
  bl.max_states = max_states;
  tccp::TccpStructure z = tccp::construct_program(p, bl);

  std::cout << kHeader << "\n";
  std::cout << "command: build\n";
  std::cout << "program: " << program_path << "\n";
  print_structure(std::cout, z);
  if (dot_out) write_file(*dot_out, tccp::to_dot(z));
  return 0;
}

int run_simulate(const std::string& program_path, int horizon) {
  tccp::Program p = load_program(program_path);
  std::vector<tccp::Trace> traces = tccp::run_bounded(p, horizon);

  std::cout << kHeader << "\n";
  std::cout << "command: simulate\n";
  std::cout << "program: " << program_path << "\n";
  std::cout << "horizon: " << horizon << "\n";
  std::cout << "traces: " << traces.size() << "\n";
  for (std::size_t i = 0; i < traces.size(); ++i) {
    std::cout << "trace " << i << ":\n";
    for (const tccp::Store& st : traces[i])
      std::cout << "  " << tccp::to_string(st) << "\n";
  }
  return 0;
}

int run_closure(const std::string& property_path) {
  tccp::FormulaPtr property = load_property(property_path);
  tccp::FormulaPtr negated = tccp::f_not(property);
  tccp::ClosureSet cl = tccp::closure(negated);

  std::cout << kHeader << "\n";
  std::cout << "command: closure\n";
  std::cout << "property: " << tccp::to_string(property) << "\n";
  std::cout << "negated: " << tccp::to_string(negated) << "\n";
  std::cout << "members: " << cl.size() << "\n";
  for (std::size_t i = 0; i < cl.members.size(); ++i)
    std::cout << "  " << i << ": " << tccp::to_string(cl.members[i]) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tccp-mc: a model checker for timed concurrent constraint programs"};
  app.require_subcommand(1);

  std::string program_path;
  std::string property_path;
  int time_limit = 50;
  int horizon = 10;
  std::size_t max_states = 100000;
  std::string dot_path;

  CLI::App* check = app.add_subcommand("check", "verify a temporal property");
  check->add_option("program", program_path, "tccp program file")->required();
  check->add_option("--property", property_path, "temporal property file")
      ->required();
  check->add_option("--time-limit", time_limit, "exploration depth in time units")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  check->add_option("--max-states", max_states, "state budget")
      ->check(CLI::PositiveNumber)
      ->envname("TCCP_MC_MAX_STATES")
      ->capture_default_str();
  check->add_option("--dot", dot_path, "write the model-checking graph as DOT");

  CLI::App* build = app.add_subcommand("build", "build the program's structure");
  build->add_option("program", program_path, "tccp program file")->required();
  build->add_option("--time-limit", time_limit, "exploration depth in time units")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  build->add_option("--max-states", max_states, "state budget")
      ->check(CLI::PositiveNumber)
      ->envname("TCCP_MC_MAX_STATES")
      ->capture_default_str();
  build->add_option("--dot", dot_path, "write the structure as DOT");

  CLI::App* simulate =
      app.add_subcommand("simulate", "run the operational semantics");
  simulate->add_option("program", program_path, "tccp program file")->required();
  simulate->add_option("--horizon", horizon, "number of time units to run")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  CLI::App* closure_cmd =
      app.add_subcommand("closure", "print the closure of the negated property");
  closure_cmd->add_option("property", property_path, "temporal property file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  std::optional<std::string> dot_out;
  if (!dot_path.empty()) dot_out = dot_path;

  try {
    if (*check)
      return run_check(program_path, property_path, time_limit, max_states,
                       dot_out);
    if (*build) return run_build(program_path, time_limit, max_states, dot_out);
    if (*simulate) return run_simulate(program_path, horizon);
    return run_closure(property_path);
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFile;
  } catch (const tccp::ParseError& e) {
    std::cerr << "error: program parse error at " << e.line << ":" << e.col
              << ": " << e.what() << "\n";
    return kExitProgramParse;
  } catch (const tccp::FormulaParseError& e) {
    std::cerr << "error: property parse error at " << e.line << ":" << e.col
              << ": " << e.what() << "\n";
    return kExitPropertyParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitResource;
  }
}
