#include <iostream>

#include "sigmadelta/cli/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    auto inv = sigmadelta::cli::invoke(args);
    if (inv.help) {
        std::cout << *inv.help;
        return 0;
    }
    std::ostream& out = inv.report.exit_code == 2 ? std::cerr : std::cout;
    out << sigmadelta::cli::render_report(inv.report, inv.format);
    return inv.report.exit_code;
}
