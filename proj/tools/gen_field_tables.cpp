// Regenerates data/solar5_field.csv and data/solar6_field.csv.
#include "solar/core_model.hpp"
#include "solar/scenario.hpp"

#include <fstream>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : "data";
    for (int id : {5, 6}) {
        const std::string path = dir + "/solar" + std::to_string(id) + "_field.csv";
        std::ofstream out(path);
        if (!out) {
            std::cerr << "cannot write " << path << "\n";
            return 1;
        }
        out << "# Power (kW) reaching the receiver of the fixed SOLAR" << id << " field, hourly.\n";
        out << "hour,field_kw\n";
        for (const auto& row : solar::sim::fixed_field_table(id))
            out << solar::format_value(row[0]) << "," << solar::format_value(row[1]) << "\n";
        std::cout << "wrote " << path << "\n";
    }
    return 0;
}
