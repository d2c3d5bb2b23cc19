#include <iostream>
#include <string>
#include <vector>

#include "minlob/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return minlob::run_cli(args, std::cout, std::cerr);
}
