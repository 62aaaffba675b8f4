#include "hopfcyc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hopfcyc::cli::run(argc, argv, std::cout, std::cerr); }
