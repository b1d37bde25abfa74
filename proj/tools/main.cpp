#include <iostream>

#include "ratiocut/cli.hpp"

int main(int argc, char** argv) {
  return ratiocut::cli::run(argc, argv, std::cout, std::cerr);
}
