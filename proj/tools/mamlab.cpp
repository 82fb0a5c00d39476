#include <iostream>

#include "mamlab/cli.hpp"

int main(int argc, char** argv) { return mamlab::cli::run(argc, argv, std::cout, std::cerr); }
