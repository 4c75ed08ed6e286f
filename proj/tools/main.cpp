#include <iostream>

#include "pal/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return pal::run_cli(args, std::cout, std::cerr);
}
