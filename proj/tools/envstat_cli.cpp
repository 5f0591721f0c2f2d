#include <iostream>
#include <string>
#include <vector>

#include "envstat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return envstat::cli::run(args, std::cout, std::cerr);
}
