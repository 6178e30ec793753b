#include <iostream>

#include "mvop_tools/cli.hpp"

int main(int argc, char** argv) { return mvop::tools::run(argc, argv, std::cout, std::cerr); }
