#include <iostream>

#include "orbitred/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return orbitred::run_cli(args, std::cout, std::cerr);
}
