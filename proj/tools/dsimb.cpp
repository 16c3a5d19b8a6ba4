#include <iostream>

#include "dsimb/cli.hpp"

int main(int argc, char** argv) { return dsimb::run_cli(argc, argv, std::cout, std::cerr); }
