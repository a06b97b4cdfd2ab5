#include <iostream>

#include "koszulkit/cli.hpp"

int main(int argc, char** argv) {
  return koszulkit::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
