#pragma once

#include "solar/thermal_loop.hpp"

#include <optional>
#include <string>

namespace solar::econ {

inline constexpr double kYieldStrength = 290.0;  // MPa
inline constexpr double kHeliostatDrive = 0.055;  // kW per heliostat in daylight

/// Unit prices, loaded from data/prices.csv.
struct Prices {
    double mirror_per_m2;
    double heliostat_fixed;
    double tower_per_m;
    double tower_per_m2;
    double receiver_per_m2;
    double receiver_tube_per_kg;
    double receiver_insulation_per_m3;
    double tank_steel_per_kg;
    double tank_insulation_per_m3;
    double tank_foundation_per_m2;
    double tank_allowable_stress;  // MPa, sizes the shell thickness
    double sg_tube_per_kg;
    double sg_shell_per_kg;
    double sg_idealized;
    double steel_density;
};

const Prices& prices();

struct PlantDesign {
    double heliostat_w = 0.0;
    double heliostat_l = 0.0;
    double n_heliostats = 0.0;
    double tower_h = 0.0;
    std::optional<thermal::ReceiverSpec> receiver;
    std::optional<thermal::TankSpec> hot;
    std::optional<thermal::TankSpec> cold;
    std::optional<thermal::ExchangerSpec> exchanger;
    int turbine = 0;  // catalogue id, 0 when absent
};

struct CostBreakdown {
    double heliostats = 0.0;
    double tower = 0.0;
    double receiver = 0.0;
    double hot_storage = 0.0;
    double cold_storage = 0.0;
    double steam_generator = 0.0;
    double turbine = 0.0;
    double total = 0.0;
};

double heliostat_cost(double w, double l, double n);
double tower_cost(double h);
double receiver_cost(const thermal::ReceiverSpec& r);
double tank_cost(const thermal::TankSpec& t);
double exchanger_cost(const thermal::ExchangerSpec& e);

CostBreakdown total_cost(const PlantDesign& d);

struct ParasiticBreakdown {
    double receiver_pump = 0.0;  // kWh
    double sg_shell = 0.0;
    double sg_tubes = 0.0;
    double heliostat_ops = 0.0;
    double storage_antifreeze = 0.0;

    double total() const { return receiver_pump + sg_shell + sg_tubes + heliostat_ops + storage_antifreeze; }
};

/// Combines the cycle's pump/heater totals with heliostat drive energy.
ParasiticBreakdown parasitic_total(double n_heliostats, double daylight_hours, const thermal::PlantState& s);

/// Yield strength at wall temperature T (K), halved 800 K above 293.15 K.
double yield_at(double T);

/// Hoop stress P d_in / (d_out - d_in) minus the yield strength (MPa).
/// Returns the failure sentinel when the wall has zero thickness.
double tube_yield_margin(double d_in, double d_out, double internal_p, double yield = kYieldStrength);

}  // namespace solar::econ
