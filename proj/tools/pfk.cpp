#include <iostream>

#include "pfk/cli.hpp"

int main(int argc, char** argv) { return pfk::cli::run(argc, argv, std::cout, std::cerr); }
