#include <iostream>
#include <string>
#include <vector>

#include "epik/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return epik::runCli(args, std::cout, std::cerr);
}
