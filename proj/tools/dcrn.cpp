#include <iostream>

#include "dcrn/cli.hpp"

int main(int argc, char** argv) { return dcrn::cli::run(argc, argv, std::cout, std::cerr); }
