#include <iostream>
#include <string>
#include <vector>

#include "trsd/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return trsd::run_command(args, std::cout, std::cerr);
}
