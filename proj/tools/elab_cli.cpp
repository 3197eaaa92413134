#include <iostream>

#include "elab/cli.hpp"

int main(int argc, char** argv) {
  return elab::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
