#include <iostream>

#include "scatterlab/cli.hpp"

int main(int argc, char** argv) {
    return scatterlab::run_cli(argc, argv, std::cout, std::cerr);
}
