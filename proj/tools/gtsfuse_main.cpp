#include <iostream>

#include "gtsfuse/cli.hpp"

int main(int argc, char** argv) { return gtsfuse::run_cli(argc, argv, std::cout, std::cerr); }
