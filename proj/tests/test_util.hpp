// ===== tests/test_util.hpp — shared helpers for the test binaries =====

#ifndef TCCP_TEST_UTIL_HPP
#define TCCP_TEST_UTIL_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "tccp/ast.hpp"
#include "tccp/logic.hpp"
#include "tccp/parser.hpp"

namespace tccp_test {

inline std::string corpus_path(const std::string& name) {
  return std::string(TCCP_CORPUS_DIR) + "/" + name;
}

inline std::string read_corpus(const std::string& name) {
  std::ifstream in(corpus_path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing corpus file: " + name);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline tccp::Program corpus_program(const std::string& name) {
  return tccp::parse_program(read_corpus(name));
}

inline tccp::FormulaPtr corpus_property(const std::string& name) {
  return tccp::parse_formula(read_corpus(name));
}

}  // namespace tccp_test

#endif  // TCCP_TEST_UTIL_HPP
