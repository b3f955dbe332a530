#include <iostream>

#include "symplex/cli.hpp"

int main(int argc, char** argv) { return symplex::cli::dispatch(argc, argv, std::cin, std::cout, std::cerr); }
