#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return acqlab::cli::run(argc, argv, std::cout, std::cerr); }
