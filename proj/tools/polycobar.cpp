#include "cli_app.hpp"

#include <iostream>

int main(int argc, char** argv) { return polycobar::cli::main_with(argc, argv, std::cout, std::cerr); }
