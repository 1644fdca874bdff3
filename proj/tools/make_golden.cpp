// Regenerates golden/check.txt from the current build.
#include "solar/check.hpp"
#include "solar/evaluator.hpp"

#include <fstream>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    const std::string path = argc > 1 ? argv[1] : "golden/check.txt";
    std::ofstream out(path);
    if (!out) {
        std::cerr << "cannot write " << path << "\n";
        return 1;
    }
    out << "# case_id id seed rep fid sha256(x) outputs as IEEE-754 bit patterns\n";
    for (const solar::check::Case& c : solar::check::cases())
        out << solar::check::golden_line(c, solar::evaluate(c.id, c.x, c.opts).y) << "\n";
    std::cout << "wrote " << path << "\n";
    return 0;
}
