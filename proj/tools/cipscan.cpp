#include <iostream>

#include "cipscan/cli.hpp"

int main(int argc, char** argv) {
  return cipscan::cli::run(argc, argv, std::cout, std::cerr);
}
