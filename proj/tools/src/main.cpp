#include <iostream>

#include "biortho_cli/cli.hpp"

int main(int argc, char** argv) { return biortho::cli::main(argc, argv, std::cout, std::cerr); }
