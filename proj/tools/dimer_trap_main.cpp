#include <iostream>
#include <string>
#include <vector>

#include "dimertrap/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dimertrap::cli::run(args, std::cout, std::cerr);
}
