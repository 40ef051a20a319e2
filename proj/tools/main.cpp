#include "spectra/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return spectra::cli::run(argc, argv, std::cout, std::cerr);
}
