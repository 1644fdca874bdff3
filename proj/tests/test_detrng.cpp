#include "doctest.h"
#include "oracle_files.hpp"

#include "solar/detrng.hpp"

#include <bit>
#include <sstream>

using namespace solar;
using solar::testing::parse_hex;

TEST_CASE("rng streams match the independent reference") {
    const auto lines = testing::oracle_lines("rng_golden.txt");
    REQUIRE(lines.size() == 6);
    for (const std::string& line : lines) {
        std::istringstream in(line);
        std::uint64_t seed = 0, stream = 0;
        in >> seed >> stream;
        CAPTURE(line);
        RngState rng = seed_stream(seed, stream);
        std::string tok;
        for (int i = 0; i < 4; ++i) {
            in >> tok;
            CHECK(rng.state()[static_cast<std::size_t>(i)] == parse_hex(tok));
        }
        for (int i = 0; i < 8; ++i) {
            in >> tok;
            CHECK(rng.next_u64() == parse_hex(tok));
        }
        rng = seed_stream(seed, stream);
        for (int i = 0; i < 4; ++i) {
            in >> tok;
            CHECK(std::bit_cast<std::uint64_t>(rng.next_unit()) == parse_hex(tok));
        }
        rng = seed_stream(seed, stream);
        for (int i = 0; i < 4; ++i) {
            in >> tok;
            CHECK(std::bit_cast<std::uint64_t>(rng.next_gaussian()) == parse_hex(tok));
        }
    }
}

TEST_CASE("same keys give the same stream, neighbouring streams differ") {
    CHECK(seed_stream(5, 9) == seed_stream(5, 9));
    RngState a = seed_stream(0, 0), b = seed_stream(0, 1);
    CHECK(a.next_u64() != b.next_u64());
    CHECK(seed_stream(3, 4).base_seed() == 3);
    CHECK(seed_stream(3, 4).stream_id() == 4);
}

TEST_CASE("unit draws lie in [0,1) with mean near 1/2") {
    RngState rng = seed_stream(11, 0);
    double sum = 0.0;
    bool in_range = true;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.next_unit();
        in_range = in_range && u >= 0.0 && u < 1.0;
        sum += u;
    }
    CHECK(in_range);
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.004));
}

TEST_CASE("gaussian draws have unit variance") {
    RngState rng = seed_stream(12, 0);
    const int n = 1000000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.next_gaussian();
        sum += g;
        sq += g * g;
    }
    const double mean = sum / n;
    const double var = (sq - n * mean * mean) / (n - 1);
    CHECK(std::abs(mean) < 0.005);
    CHECK(var > 0.99);
    CHECK(var < 1.01);
}
