#include <iostream>

#include "atde/cli.hpp"

int main(int argc, char** argv) { return atde::run_cli(argc, argv, std::cout, std::cerr); }
