#include <iostream>
#include <string>
#include <vector>

#include "qes/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return qes::cli::run_cli(args, std::cout, std::cerr);
}
