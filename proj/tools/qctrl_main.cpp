#include "qctrl/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return qctrl::cli::run(argc, argv, std::cout, std::cerr); }
