#include <iostream>

#include "polylad/cli/cli.hpp"

int main(int argc, char** argv) { return polylad::cli::run(argc, argv, std::cout, std::cerr); }
