#include <iostream>

#include "chromhopf/cli.hpp"

int main(int argc, char** argv)
{
    return chromhopf::cli::run(argc, argv, std::cout, std::cerr);
}
