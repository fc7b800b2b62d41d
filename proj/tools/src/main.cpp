#include <iostream>
#include <string>
#include <vector>

#include "posred/cli/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return posred::cli::run(args, std::cout, std::cerr);
}
