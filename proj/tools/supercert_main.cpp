#include <iostream>

#include "supercert/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return supercert::run_cli(args, std::cout, std::cerr);
}
