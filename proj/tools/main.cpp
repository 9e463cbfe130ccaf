#include "convexforest/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return convexforest::RunCli({argv + 1, argv + argc}, std::cout, std::cerr);
}
