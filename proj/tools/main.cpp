#include <iostream>

#include "balldesign/cli.hpp"

int main(int argc, char** argv) { return balldesign::cli::run(argc, argv, std::cout, std::cerr); }
