#include <iostream>
#include <string>
#include <vector>

#include "mroot/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mroot::run_cli(args, std::cout, std::cerr);
}
