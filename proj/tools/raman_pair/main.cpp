#include <iostream>

#include "raman_pair/cli.hpp"

int main(int argc, char** argv) { return raman_pair::run_cli(argc, argv, std::cout, std::cerr); }
