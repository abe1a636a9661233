#include <iostream>
#include <string>
#include <vector>

#include "normal_field/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nfield::cli::run_cli(args, std::cout, std::cerr);
}
