#include <iostream>
#include <string>
#include <vector>

#include "frontsel/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv, argv + argc);
  return frontsel::cli::run(args, std::cout, std::cerr);
}
