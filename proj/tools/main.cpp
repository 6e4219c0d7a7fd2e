#include <iostream>

#include "prerep/cli.hpp"

int main(int argc, char** argv) { return prerep::cli::run(argc, argv, std::cout, std::cerr); }
