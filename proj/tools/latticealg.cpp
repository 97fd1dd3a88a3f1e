#include "latticealg/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return latticealg::cli::run(argc, argv, std::cout, std::cerr); }
