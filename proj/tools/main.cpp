#include <iostream>
#include <string>
#include <vector>

#include "cuntzwalk/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cuntz::cli::run(args, std::cout, std::cerr);
}
