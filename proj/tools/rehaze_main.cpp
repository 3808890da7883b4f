#include <iostream>
#include <string>
#include <vector>

#include "rehaze/cli.hpp"

int main(int argc, char** argv) {
    return rehaze::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
