#ifndef TRSD_TESTS_HELPERS_HPP
#define TRSD_TESTS_HELPERS_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "trsd/formats.hpp"
#include "trsd/turing.hpp"

namespace trsd::tests {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline std::string machine_path(const std::string& name) {
  return std::string(TRSD_MACHINES_DIR) + "/" + name;
}

inline std::string machine_text(const std::string& name) {
  return read_file(machine_path(name));
}

inline TuringMachine corpus_machine(const std::string& name) {
  return parse_machine(machine_text(name));
}

}  // namespace trsd::tests

#endif  // TRSD_TESTS_HELPERS_HPP
