#include <iostream>

#include "graphon/cli.hpp"

int main(int argc, char** argv) {
  return graphon::cli::run(argc, argv, std::cout, std::cerr);
}
