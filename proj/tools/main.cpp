#include <iostream>
#include <string>
#include <vector>

#include "ch/report.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ch::run_command(args, std::cout, std::cerr);
}
