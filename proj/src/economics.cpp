#include "solar/economics.hpp"

#include "solar/core_model.hpp"
#include "solar/data.hpp"
#include "solar/detmath.hpp"
#include "solar/powerblock.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <stdexcept>

namespace solar::econ {
namespace {

constexpr double kPi = dm::kPi;

std::map<std::string, double> read_prices() {
    std::map<std::string, double> out;
    const std::string_view text = data::file("prices.csv");
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty() || line.front() == '#') continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string_view::npos) continue;
        const std::string_view key = line.substr(0, comma);
        std::string_view val = line.substr(comma + 1);
        const std::size_t comma2 = val.find(',');
        if (comma2 != std::string_view::npos) val = val.substr(0, comma2);
        double v = 0.0;
        if (std::from_chars(val.data(), val.data() + val.size(), v).ec != std::errc()) continue;  // header
        out[std::string(key)] = v;
    }
    return out;
}

}  // namespace

const Prices& prices() {
    static const Prices p = [] {
        const auto m = read_prices();
        auto get = [&m](const char* k) {
            auto it = m.find(k);
            if (it == m.end()) throw std::runtime_error(std::string("prices.csv lacks ") + k);
            return it->second;
        };
        return Prices{get("mirror_per_m2"),       get("heliostat_fixed"),     get("tower_per_m"),
                      get("tower_per_m2"),        get("receiver_per_m2"),     get("receiver_tube_per_kg"),
                      get("receiver_insulation_per_m3"), get("tank_steel_per_kg"), get("tank_insulation_per_m3"),
                      get("tank_foundation_per_m2"), get("tank_allowable_stress"), get("sg_tube_per_kg"),
                      get("sg_shell_per_kg"),     get("sg_idealized"),        get("steel_density")};
    }();
    return p;
}

double heliostat_cost(double w, double l, double n) {
    const Prices& p = prices();
    return n * (p.mirror_per_m2 * w * l + p.heliostat_fixed);
}

double tower_cost(double h) {
    const Prices& p = prices();
    return p.tower_per_m * h + p.tower_per_m2 * h * h;
}

double receiver_cost(const thermal::ReceiverSpec& r) {
    const Prices& p = prices();
    const double cavity = 0.5 * kPi * r.aperture_w * r.aperture_h + 0.25 * kPi * r.aperture_w * r.aperture_w;
    const double tube_steel = r.n_tubes * 0.25 * kPi * (r.d_out * r.d_out - r.d_in * r.d_in) * r.aperture_h * p.steel_density;
    const double insulation = cavity * r.insul_t;
    return p.receiver_per_m2 * cavity + p.receiver_tube_per_kg * tube_steel + p.receiver_insulation_per_m3 * insulation;
}

double tank_cost(const thermal::TankSpec& t) {
    const Prices& p = prices();
    const double floor = 0.25 * kPi * t.diameter * t.diameter;
    const double wall = kPi * t.diameter * t.height;
    // Hydrostatic hoop sizing of the shell, 10 mm minimum.
    const double head = thermal::kSaltRho * thermal::kGravity * t.height / 1.0e6;  // MPa
    const double shell_t = std::max(0.01, head * t.diameter / (2.0 * p.tank_allowable_stress));
    const double steel = (wall * shell_t + 2.0 * floor * 0.01) * p.steel_density;
    const double insulation = (wall + 2.0 * floor) * t.insul_t;
    return p.tank_steel_per_kg * steel + p.tank_insulation_per_m3 * insulation + p.tank_foundation_per_m2 * floor;
}

double exchanger_cost(const thermal::ExchangerSpec& e) {
    const Prices& p = prices();
    if (e.idealized) return p.sg_idealized;
    const double tubes = e.n_shell_passes * e.n_tubes * 0.25 * kPi * (e.d_out * e.d_out - e.d_in * e.d_in) * e.tube_len *
                         p.steel_density;
    const double shell_d = std::sqrt(4.0 * e.n_tubes * e.tube_spacing * e.tube_spacing / (0.9 * kPi));
    const double shell = e.n_shell_passes * (kPi * shell_d * e.tube_len * 0.02 +
                                             e.n_baffles * 0.25 * kPi * shell_d * shell_d * (1.0 - e.baffle_cut) * 0.01) *
                         p.steel_density;
    return p.sg_tube_per_kg * tubes + p.sg_shell_per_kg * shell;
}

CostBreakdown total_cost(const PlantDesign& d) {
    CostBreakdown c;
    c.heliostats = heliostat_cost(d.heliostat_w, d.heliostat_l, d.n_heliostats);
    c.tower = tower_cost(d.tower_h);
    if (d.receiver) c.receiver = receiver_cost(*d.receiver);
    if (d.hot) c.hot_storage = tank_cost(*d.hot);
    if (d.cold) c.cold_storage = tank_cost(*d.cold);
    if (d.exchanger) c.steam_generator = exchanger_cost(*d.exchanger);
    if (d.turbine > 0) c.turbine = power::turbine_lookup(d.turbine).cost;
    c.total = c.heliostats + c.tower + c.receiver + c.hot_storage + c.cold_storage + c.steam_generator + c.turbine;
    return c;
}

ParasiticBreakdown parasitic_total(double n_heliostats, double daylight_hours, const thermal::PlantState& s) {
    ParasiticBreakdown p;
    p.receiver_pump = s.pump_receiver;
    p.sg_shell = s.pump_shell;
    p.sg_tubes = s.pump_tubes;
    p.heliostat_ops = kHeliostatDrive * n_heliostats * daylight_hours;
    p.storage_antifreeze = s.heater;
    return p;
}

double yield_at(double T) {
    const double r = std::max(0.0, T - 293.15) / 800.0;
    return kYieldStrength / (1.0 + r * r);
}

double tube_yield_margin(double d_in, double d_out, double internal_p, double yield) {
    if (!(d_out > d_in)) return kFail;
    return internal_p * d_in / (d_out - d_in) - yield;
}

}  // namespace solar::econ
