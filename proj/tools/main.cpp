#include <iostream>
#include <vector>

#include "dispatch.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return notrade::cli_dispatch(args, std::cout, std::cerr);
}
