#include <iostream>

#include "cheeger/cli.hpp"

int main(int argc, char** argv) { return cheeger::cli::main_entry(argc, argv, std::cout, std::cerr); }
