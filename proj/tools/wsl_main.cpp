#include <iostream>
#include <string>
#include <vector>

#include "wsl/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wsl::cli::run_args(args, std::cout, std::cerr);
}
