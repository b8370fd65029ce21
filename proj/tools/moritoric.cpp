#include <iostream>
#include <string>
#include <vector>

#include "moritoric/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return moritoric::cli::run(args, std::cin, std::cout);
}
