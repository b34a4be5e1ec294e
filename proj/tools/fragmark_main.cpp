#include <iostream>

#include "fragmark/cli.hpp"

int main(int argc, char** argv) { return fragmark::cli_main(argc, argv, std::cout, std::cerr); }
