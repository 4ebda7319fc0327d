#include "difflarge/workbench.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return difflarge::run_command(args, std::cout);
}
