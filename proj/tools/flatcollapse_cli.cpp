#include <iostream>

#include "flatcollapse/cli.hpp"

int main(int argc, char** argv) { return flatcollapse::cli_main(argc, argv, std::cout, std::cerr); }
