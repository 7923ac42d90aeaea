#include <iostream>
#include <string>
#include <vector>

#include "opergr/cli.hpp"

int main(int argc, char **argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return opergr::run(args, std::cout, std::cerr);
}
