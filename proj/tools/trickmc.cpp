#include "trickmc/commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return trickmc::run_cli(args, std::cin, std::cout, std::cerr);
}
