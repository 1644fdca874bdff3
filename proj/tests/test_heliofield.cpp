#include "doctest.h"
#include "oracle_files.hpp"

#include "solar/detmath.hpp"
#include "solar/heliofield.hpp"

#include <algorithm>
#include <random>
#include <sstream>

using namespace solar;
using namespace solar::field;

namespace {

FieldParams params(double w, double l, double h, double theta, double rmin, double rmax) {
    FieldParams p;
    p.heliostat_w = w;
    p.heliostat_l = l;
    p.tower_h = h;
    p.angular_width = theta;
    p.r_min = rmin;
    p.r_max = rmax;
    return p;
}

std::vector<SunState> day_instants() {
    std::vector<SunState> out;
    for (int h = 0; h < 24; ++h) {
        SunState s = sun_position(kDefaultLatitude, 80, h * 60.0 + 30.0);
        if (s.above_horizon) out.push_back(s);
    }
    return out;
}

}  // namespace

TEST_CASE("grid capacity matches the independent enumeration") {
    const auto lines = testing::oracle_lines("grid_golden.txt");
    REQUIRE(lines.size() == 8);
    for (const std::string& line : lines) {
        std::istringstream in(line);
        double w, l, h, theta, rmin, rmax;
        std::int64_t capacity;
        in >> w >> l >> h >> theta >> rmin >> rmax >> capacity;
        CAPTURE(line);
        const FieldLayout layout = generate_grid(params(w, l, h, theta, rmin, rmax));
        CHECK(layout.capacity == capacity);
        CHECK(static_cast<std::int64_t>(layout.positions().size()) == capacity);
    }
}

TEST_CASE("degenerate annulus holds no position") {
    CHECK(generate_grid(params(10, 10, 100, 89, 2, 2)).capacity == 0);
}

TEST_CASE("a taller tower spreads a larger field") {
    const auto low = generate_grid(params(9, 9, 70, 65, 1, 6));
    const auto high = generate_grid(params(9, 9, 120, 65, 1, 6));
    CHECK(high.capacity > low.capacity);
}

TEST_CASE("sun position") {
    SUBCASE("equator at equinox noon is near the zenith") {
        CHECK(sun_position(0.0, 80, 720.0).elevation == doctest::Approx(90.0).epsilon(0.5 / 90.0));
    }
    SUBCASE("midnight in summer at 45 degrees is below the horizon") {
        CHECK_FALSE(sun_position(45.0, 172, 0.0).above_horizon);
    }
    SUBCASE("elevation is symmetric about noon") {
        for (double dm = 30.0; dm <= 360.0; dm += 30.0) {
            const double a = sun_position(37.5, 120, 720.0 - dm).elevation;
            const double b = sun_position(37.5, 120, 720.0 + dm).elevation;
            CHECK(std::abs(a - b) < 0.1);
        }
    }
}

TEST_CASE("attenuation") {
    CHECK(attenuation(1e-9) == doctest::Approx(1.0).epsilon(0.01));
    CHECK(attenuation(100.0) > attenuation(500.0));
    CHECK(attenuation(500.0) > attenuation(2000.0));
    CHECK(attenuation(5000.0) > 0.0);
}

TEST_CASE("a huge aperture catches every beam") {
    const FieldParams p = params(10, 10, 100, 89, 0.5, 6);
    const Aperture wide{1e6, 1e6};
    const auto layout = generate_grid(p);
    const SunState sun = sun_position(kDefaultLatitude, 80, 720.0);
    for (const Position& pos : layout.positions()) {
        const SunState s = sun;
        // With no spillage the efficiency is cosine times attenuation, both at most 1.
        const double eta = optical_efficiency(p, wide, pos, s);
        CHECK(eta > 0.0);
        CHECK(eta <= 1.0);
    }
}

TEST_CASE("aperture width reshapes the selected field") {
    const FieldParams p = params(10, 10, 100, 89, 0.5, 10);
    const auto layout = generate_grid(p);
    const auto instants = day_instants();
    // Mean angular distance from the north axis of the selected heliostats.
    auto spread = [&](double width) {
        const FieldSelection sel = select_heliostats(rate_positions(layout, {12.0, width}, instants), 800);
        double sum = 0.0;
        for (const RatedPosition& rp : sel.heliostats) sum += std::abs(rp.pos.azimuth);
        return sum / static_cast<double>(sel.heliostats.size());
    };
    CHECK(spread(3.0) < spread(15.0));
}

TEST_CASE("selection size, slack and order independence") {
    const FieldParams p = params(9, 9, 120, 65, 1, 6);
    const auto layout = generate_grid(p);
    const auto rated = rate_positions(layout, {10, 10}, day_instants());
    const auto cap = layout.capacity;

    const FieldSelection all = select_heliostats(rated, cap);
    CHECK(static_cast<std::int64_t>(all.heliostats.size()) == cap);
    CHECK(all.fit_slack == 0);
    CHECK(select_heliostats(rated, cap + 5).fit_slack == 5);

    auto shuffled = rated;
    std::mt19937 gen(4);
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    const FieldSelection a = select_heliostats(rated, 500);
    const FieldSelection b = select_heliostats(shuffled, 500);
    REQUIRE(a.heliostats.size() == b.heliostats.size());
    for (std::size_t i = 0; i < a.heliostats.size(); ++i) {
        CHECK(a.heliostats[i].pos.x == b.heliostats[i].pos.x);
        CHECK(a.heliostats[i].pos.y == b.heliostats[i].pos.y);
    }
}

TEST_CASE("ring walk selects the same heliostats as the full rating") {
    const FieldParams p = params(10, 10, 150, 60, 1, 5.5);
    const auto layout = generate_grid(p);
    const auto instants = day_instants();
    const Aperture ap{10, 10};
    const FieldSelection full = select_heliostats(rate_positions(layout, ap, instants), 1400);
    const FieldSelection walk = select_best(layout, ap, instants, 1400);
    REQUIRE(full.heliostats.size() == walk.heliostats.size());
    for (std::size_t i = 0; i < full.heliostats.size(); ++i) {
        CHECK(full.heliostats[i].pos.x == walk.heliostats[i].pos.x);
        CHECK(full.heliostats[i].efficiency == walk.heliostats[i].efficiency);
    }
}

TEST_CASE("serial and parallel kernels agree bit for bit") {
    const FieldParams p = params(10, 10, 100, 89, 0.5, 6);
    const auto layout = generate_grid(p);
    const auto instants = day_instants();
    const Aperture ap{8, 8};
    const auto s = rate_positions(layout, ap, instants, Exec::Serial);
    const auto q = rate_positions(layout, ap, instants, Exec::Parallel);
    REQUIRE(s.size() == q.size());
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(s[i].efficiency == q[i].efficiency);

    const FieldSelection sel = select_heliostats(s, 600);
    const FieldTracer tracer(p, ap, sel);
    for (const SunState& sun : instants) CHECK(tracer.power(sun, 16, Exec::Serial) == tracer.power(sun, 16, Exec::Parallel));
}

TEST_CASE("tracer power") {
    const FieldParams p = params(10, 10, 100, 89, 0.5, 6);
    const Aperture wide{1e6, 1e6};

    SUBCASE("zero below the horizon") {
        const auto layout = generate_grid(p);
        const FieldTracer tracer(p, wide, select_heliostats(rate_positions(layout, wide, day_instants()), 200));
        CHECK(tracer.power(sun_position(kDefaultLatitude, 80, 0.0), 16) == 0.0);
    }
    SUBCASE("single heliostat delivers reflectivity times area times efficiency") {
        const SunState sun = sun_position(kDefaultLatitude, 172, 720.0);
        // Place the mirror opposite the sun so the reflected beam heads back along the incoming ray.
        const double e = sun.elevation * dm::kDegToRad;
        const double r = (p.tower_h - p.pivot_height()) / (dm::sin(e) / dm::cos(e));
        const double az = (sun.azimuth + 180.0) * dm::kDegToRad;
        Position pos{r * dm::sin(az), r * dm::cos(az), r, az};
        FieldSelection sel;
        sel.heliostats.push_back({pos, 1.0});
        sel.capacity = 1;
        const FieldTracer tracer(p, wide, sel);
        const double expected = kReflectivity * tracer.mirror_area() * kDni * optical_efficiency(p, wide, pos, sun);
        CHECK(tracer.power(sun, kFullRays) == doctest::Approx(expected).epsilon(1e-6));
        const double slant = std::sqrt(r * r + (p.tower_h - p.pivot_height()) * (p.tower_h - p.pivot_height()));
        CHECK(tracer.power(sun, kFullRays) ==
              doctest::Approx(kReflectivity * tracer.mirror_area() * attenuation(slant)).epsilon(1e-6));
    }
    SUBCASE("never more than the mirror area times the irradiance") {
        const auto layout = generate_grid(p);
        const FieldTracer tracer(p, {8, 8}, select_heliostats(rate_positions(layout, {8, 8}, day_instants()), 2000));
        for (const SunState& sun : day_instants()) CHECK(tracer.power(sun, 16) <= tracer.mirror_area() * kDni);
    }
}
