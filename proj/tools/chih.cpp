#include <iostream>

#include "chih/cli.hpp"

int main(int argc, char** argv) {
  return chih::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
