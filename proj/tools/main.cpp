#include <iostream>

#include "attrikit/cli.hpp"

int main(int argc, char** argv) {
  return attrikit::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
