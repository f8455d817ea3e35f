#include <iostream>
#include <string>
#include <vector>

#include "crimepat/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return crimepat::cli::run(args, std::cout, std::cerr);
}
