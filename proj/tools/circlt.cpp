#include <iostream>
#include <string>
#include <vector>

#include "circlt/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return circlt::cli::run_command(args, std::cout, std::cerr);
}
