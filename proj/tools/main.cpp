#include <iostream>
#include <string>
#include <vector>

#include "qae/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return qae::run_cli(args, std::cout, std::cerr);
}
