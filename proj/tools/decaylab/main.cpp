#include "decaylab/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return decaylab::cli::run(argc, argv, std::cout, std::cerr); }
