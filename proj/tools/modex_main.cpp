#include <iostream>

#include "modex/cli.hpp"

int main(int argc, char** argv) {
  return modex::run_cli(argc, argv, std::cout, std::cerr);
}
