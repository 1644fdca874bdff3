#include "doctest.h"

#include "solar/data.hpp"
#include "solar/scenario.hpp"

using namespace solar;

TEST_CASE("shipped field tables match the generator") {
    for (int id : {5, 6}) {
        CAPTURE(id);
        const auto rows = data::parse_csv(data::file("solar" + std::to_string(id) + "_field.csv"));
        const auto fresh = sim::fixed_field_table(id);
        REQUIRE(rows.size() == fresh.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            CHECK(rows[i][0] == fresh[i][0]);
            CHECK(rows[i][1] == fresh[i][1]);
        }
    }
    CHECK(sim::fixed_field_table(5).size() == 30 * 24);
    CHECK(sim::fixed_field_table(6).size() == 24);
}

TEST_CASE("embedded files") {
    CHECK(data::has_file("turbines.csv"));
    CHECK(data::has_file("golden/check.txt"));
    CHECK_FALSE(data::has_file("nope.csv"));
    CHECK_THROWS_AS(data::file("nope.csv"), std::out_of_range);
    CHECK(data::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(data::checksum().size() == 64);
}
