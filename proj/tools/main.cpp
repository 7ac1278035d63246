#include <iostream>
#include <string>
#include <vector>

#include "mediumband/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return mediumband::dispatch(args, std::cout, std::cerr);
}
