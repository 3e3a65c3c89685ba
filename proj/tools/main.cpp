#include <iostream>
#include <string>
#include <vector>

#include "matfin/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return matfin::run_cli(args, std::cout, std::cerr);
}
