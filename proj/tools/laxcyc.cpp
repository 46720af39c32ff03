#include <iostream>

#include "laxcyc/cli.hpp"

int main(int argc, char** argv) { return laxcyc::cli::run(argc, argv, std::cout, std::cerr); }
