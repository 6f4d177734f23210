#include <iostream>

#include "vnesim/cli.hpp"

int main(int argc, char** argv) { return vnesim::cli_main(argc, argv, std::cout, std::cerr); }
