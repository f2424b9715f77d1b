#include <iostream>

#include "spinkit/cli.hpp"

int main(int argc, char** argv) {
  return spinkit::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
