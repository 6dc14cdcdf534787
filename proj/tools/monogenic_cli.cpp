#include <iostream>
#include <string>
#include <vector>

#include "monogenic/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return monogenic::run_cli(std::move(args), std::cout, std::cerr);
}
