#include <iostream>

#include "aristo/cli.hpp"

int main(int argc, char** argv) { return aristo::run_cli(argc, argv, std::cout, std::cerr); }
