#include "cyent/cli.hpp"

#include <iostream>

int main(int argc, char **argv) { return cyent::cli::run(argc, argv, std::cout, std::cerr); }
