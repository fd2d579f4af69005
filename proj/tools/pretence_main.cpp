#include <iostream>

#include "pretence/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(true);
  return pretence::cli::main(argc, argv, std::cout, std::cerr);
}
