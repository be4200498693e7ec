#include <iostream>
#include <vector>

#include "ddsurf/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ddsurf::run_cli(args, std::cout, std::cerr);
}
