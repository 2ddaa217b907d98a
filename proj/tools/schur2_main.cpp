#include <iostream>

#include "schur2/cli.hpp"

int main(int argc, char** argv) {
  return schur2::run_cli(argc, argv, std::cout, std::cerr);
}
