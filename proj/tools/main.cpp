#include <iostream>

#include "fle/cli.hpp"

int main(int argc, char** argv) {
  return fle::run_cli(argc, argv, std::cout, std::cerr);
}
