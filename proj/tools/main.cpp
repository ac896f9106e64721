#include <iostream>

#include "ecs_cli/cli.hpp"

int main(int argc, char** argv) { return ecs::cli::run(argc, argv, std::cout, std::cerr); }
