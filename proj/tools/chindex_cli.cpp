#include <iostream>

#include "chindex/cli.hpp"

int main(int argc, char** argv) { return chindex::run_cli(argc, argv, std::cout, std::cerr); }
