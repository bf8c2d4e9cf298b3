#include <iostream>

#include "frobeval/cli.hpp"

int main(int argc, char** argv) {
  return frobeval::run_cli(argc, argv, std::cout, std::cerr);
}
