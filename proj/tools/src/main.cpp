#include <iostream>
#include <string>
#include <vector>

#include "latcomp_cli/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  std::vector<std::string> args(argv + 1, argv + argc);
  return latcomp::cli::run(args, std::cout, std::cerr);
}
