#include <iostream>

#include "zetalab/cli.hpp"

int main(int argc, char** argv) {
    return zetalab::cli::dispatch(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
