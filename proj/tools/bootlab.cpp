#include <iostream>
#include <string>
#include <vector>

#include "bootlab/config.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bootlab::cli_main(args, std::cout, std::cerr);
}
