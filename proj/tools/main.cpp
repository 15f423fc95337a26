#include <iostream>

#include "hypermatch/cli.hpp"

int main(int argc, char** argv) {
    return hypermatch::run_cli(argc, argv, std::cout, std::cerr);
}
