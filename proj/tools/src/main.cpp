#include <iostream>

#include "algoprob/cli.hpp"

int main(int argc, char** argv) { return algoprob::cli::run(argc, argv, std::cout, std::cerr); }
