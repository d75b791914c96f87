#include <iostream>

#include "binec/cli.hpp"

int main(int argc, char** argv) { return binec::cli::run(argc, argv, std::cout, std::cerr); }
