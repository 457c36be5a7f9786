#include "fusionlab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return fusionlab::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
