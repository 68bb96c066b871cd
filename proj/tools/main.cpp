#include <iostream>

#include "simplexlab/cli.hpp"

int main(int argc, char** argv) { return simplexlab::cli::run(argc, argv, std::cout, std::cerr); }
