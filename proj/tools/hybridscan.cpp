#include <unistd.h>

#include <cstdlib>
#include <iostream>

#include "hybridscan/cli.hpp"

int main(int argc, char** argv) {
  bool color = ::isatty(STDOUT_FILENO) != 0 &&
               std::getenv("HYBRIDSCAN_NO_COLOR") == nullptr;
  return hybridscan::run_cli(argc, argv, std::cout, std::cerr, color);
}
