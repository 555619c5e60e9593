#include <iostream>

#include "chier/cli.hpp"

int main(int argc, char** argv) { return chier::cli::run(argc, argv, std::cout, std::cerr); }
