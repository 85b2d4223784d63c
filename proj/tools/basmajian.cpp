#include <iostream>

#include "basmajian/cli.hpp"

int main(int argc, char** argv) { return basmajian::run_cli(argc, argv, std::cout, std::cerr); }
