#include <iostream>

#include "antimagic/cli.hpp"

int main(int argc, char** argv) {
    return antimagic::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
