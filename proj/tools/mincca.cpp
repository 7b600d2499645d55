#include <iostream>

#include "mincca/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mincca::run_cli(args, std::cout, std::cerr);
}
