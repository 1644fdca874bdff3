#pragma once

#include <vector>

namespace solar::power {

inline constexpr double kMechToElectric = 0.95;

struct TurbineRecord {
    int id = 0;
    double inlet_T = 0.0;  // K
    double inlet_P = 0.0;  // MPa
    double p_max = 0.0;    // kW electric
    double p_min = 0.0;    // kW electric
    double cost = 0.0;     // $
};

/// The eight catalogue rows, ordered by p_max.
const std::vector<TurbineRecord>& turbine_catalogue();

/// Throws std::out_of_range for st outside 1..8.
const TurbineRecord& turbine_lookup(int st);

/// Design-point cycle efficiency from inlet temperature and pressure.
double max_efficiency(const TurbineRecord& rec);

/// eta_max * (1 - 0.4 (1 - u)^2); u clamped to (0, 1].
double turbine_efficiency(const TurbineRecord& rec, double usage_ratio);

/// Thermal input (kW) needed for a given electric output.
double thermal_for_electric(const TurbineRecord& rec, double electric_kw);

struct Dispatch {
    double electric_kw = 0.0;
    double thermal_draw_kw = 0.0;
    double unmet_kw = 0.0;
};

Dispatch dispatch(const TurbineRecord& rec, double demand_kw, double available_thermal_kw);

}  // namespace solar::power
