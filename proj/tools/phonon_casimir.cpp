#include <iostream>

#include "phonon/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return phonon::cli::run(std::move(args), std::cout, std::cerr);
}
