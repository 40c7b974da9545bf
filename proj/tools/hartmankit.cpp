#include "hartmankit/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return hartmankit::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
