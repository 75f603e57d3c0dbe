#include <iostream>

#include "arrayctl_cli/commands.hpp"

int main(int argc, char** argv) { return arrayctl::cli::run(argc, argv, std::cout, std::cerr); }
