#include <iostream>

#include "cqc/cli.hpp"

int main(int argc, char** argv) {
    return cqc::run_cli(argc, argv, std::cout, std::cerr);
}
