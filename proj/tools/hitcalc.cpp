#include <iostream>
#include <string>
#include <vector>

#include "hitcalc/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return hitcalc::cli::run(args, std::cin, std::cout, std::cerr, hitcalc::cli::process_environment());
    } catch (const std::exception& e) {
        std::cerr << "hitcalc: internal error: " << e.what() << '\n';
        return 1;
    }
}
