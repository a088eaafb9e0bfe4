#include <iostream>

#include "navq/cli.hpp"

int main(int argc, char** argv) { return navq::run_cli(argc, argv, std::cout, std::cerr); }
