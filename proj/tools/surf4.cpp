#include "surf4/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return surf4::cli::run(argc, argv, std::cout, std::cerr); }
