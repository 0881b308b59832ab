#include <iostream>
#include <string>
#include <vector>

#include "metazeta/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return metazeta::run_cli(args, std::cout, std::cerr);
}
