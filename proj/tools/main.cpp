#include <iostream>
#include <string>
#include <vector>

#include "dilates/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dilates::cli::run(std::move(args), std::cout, std::cerr);
}
