#include <string>
#include <vector>

#include "tailchain/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return tailchain::cli_dispatch(args);
}
