#include <iostream>

#include "dimp8/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dimp8::run_cli(args, std::cout, std::cerr);
}
