#include <iostream>

#include "h4/cli.hpp"

int main(int argc, char** argv) { return h4::cli::run(argc, argv, std::cout, std::cerr); }
