#include <iostream>

#include "wordweight/cli.hpp"

int main(int argc, char** argv) {
    return wordweight::run_cli(argc, argv, std::cout, std::cerr);
}
