#include <string>
#include <vector>

#include "hvacrl/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hvacrl::cli::run(args);
}
