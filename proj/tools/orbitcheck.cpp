#include <iostream>

#include "orbitcheck/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return orbitcheck::run_cli(args, std::cout, std::cerr);
}
