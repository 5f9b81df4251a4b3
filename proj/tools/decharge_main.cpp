#include <iostream>
#include <string>
#include <vector>

#include "decharge/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return decharge::run_cli(args, std::cout, std::cerr);
}
