#include <iostream>
#include <string>
#include <vector>

#include "penny/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return penny::cli::run(args, std::cout, std::cerr);
}
