#include "pagespec/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pagespec::cli::run(std::move(args));
}
