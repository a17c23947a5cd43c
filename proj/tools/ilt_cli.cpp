#include <iostream>

#include "ilt/cli.hpp"

int main(int argc, char** argv) { return ilt::cli::run_cli(argc, argv, std::cout, std::cerr); }
