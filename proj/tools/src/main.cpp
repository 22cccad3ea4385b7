#include <iostream>

#include "wgtool/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wgtool::run(args, std::cout, std::cerr);
}
