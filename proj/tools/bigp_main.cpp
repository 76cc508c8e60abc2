#include <iostream>

#include "bigp/cli_app.hpp"

int main(int argc, char** argv) {
  return bigp::cli_main(argc, argv, std::cout, std::cerr);
}
