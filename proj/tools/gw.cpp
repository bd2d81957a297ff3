#include <iostream>

#include "gw/cli.hpp"

int main(int argc, char** argv) { return gw::run_cli(argc, argv, std::cout, std::cerr); }
