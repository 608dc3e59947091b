#include <iostream>

#include "sif/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return sif::run_cli(args, std::cout, std::cerr);
}
