#include <iostream>

#include "hnp/cli.hpp"

int main(int argc, char** argv) {
    return hnp::cli::dispatch(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
