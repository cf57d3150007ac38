#include "fidbound/cli/cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return fidbound::cli::run(argc, argv, std::cout, std::cerr); }
