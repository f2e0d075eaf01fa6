#include <iostream>
#include <string>
#include <vector>

#include "intdep/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return intdep::run_command(args, std::cout, std::cerr);
}
