#include "des2/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return des2::cli::run(argc, argv, std::cout, std::cerr); }
