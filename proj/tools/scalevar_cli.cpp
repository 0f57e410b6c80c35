#include <iostream>

#include "scalevar/cli/commands.hpp"

int main(int argc, char** argv) { return scalevar::cli::run(argc, argv, std::cout, std::cerr); }
