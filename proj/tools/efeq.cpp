#include <iostream>

#include "efeq/cli.hpp"

int main(int argc, char** argv) { return efeq::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
