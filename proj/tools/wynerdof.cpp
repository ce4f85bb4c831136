#include "wyner/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return wyner::run(argc, argv, std::cout, std::cerr); }
