#include "qcahaz/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return qcahaz::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
