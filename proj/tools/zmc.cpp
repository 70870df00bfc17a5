#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return zmc::cli::run(argc, argv, std::cout, std::cerr);
}
