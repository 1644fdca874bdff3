#pragma once

#include "solar/powerblock.hpp"

#include <limits>

namespace solar::thermal {

// Solar salt (60/40 NaNO3-KNO3).
inline constexpr double kSaltCp = 1.52;      // kJ/kg K
inline constexpr double kSaltRho = 1800.0;   // kg/m3
inline constexpr double kSaltMelt = 495.0;   // K
inline constexpr double kSigma = 5.670374419e-8;
inline constexpr double kGravity = 9.81;
inline constexpr double kAtmosphere = 0.101325;  // MPa
inline constexpr double kPumpEfficiency = 0.90;
inline constexpr double kFeedwaterT = 500.0;  // K
inline constexpr double kTankHeel = 0.05;     // share of capacity the pumps cannot draw
inline constexpr int kReceiverPanels = 8;

double salt_viscosity(double T);     // Pa s
double salt_conductivity(double T);  // W/m K

struct ReceiverSpec {
    double aperture_h = 0.0;
    double aperture_w = 0.0;
    double n_tubes = 0.0;
    double d_in = 0.0;
    double d_out = 0.0;
    double insul_t = 0.0;
};

struct ReceiverLosses {
    double reflection = 0.0;  // kW
    double radiation = 0.0;
    double convection = 0.0;
    double conduction = 0.0;
};

/// Loss channels at a given cavity wall temperature.
ReceiverLosses receiver_losses(const ReceiverSpec& spec, double incident_kw, double wall_T, double ambient_T);

struct ReceiverResult {
    double absorbed_kw = 0.0;
    double salt_flow = 0.0;  // kg/s
    double wall_T = 0.0;
    int iterations = 0;
    bool converged = true;
};

ReceiverResult receiver_absorb(const ReceiverSpec& spec, double incident_kw, double inlet_T, double outlet_T,
                               double ambient_T = 293.15);

/// Friction plus bend losses through the serpentine tube path (MPa).
double receiver_pressure_drop(const ReceiverSpec& spec, double salt_flow, double mean_T);

struct TankSpec {
    double insul_t = 0.0;
    double height = 0.0;
    double diameter = 0.0;

    double area() const;       // floor area, m2
    double capacity() const;   // kg of salt when full
};

struct TankState {
    double salt_level = 0.0;  // m
    double salt_temp = 0.0;   // K
};

struct TankLosses {
    double bottom = 0.0;          // kW through the floor
    double wet_wall = 0.0;        // kW through the wetted wall
    double ms_to_ceiling = 0.0;   // kW radiated from the salt surface to the roof
    double ms_to_dry = 0.0;       // kW radiated to the dry wall
    double ceiling_external = 0.0;
    double dry_external = 0.0;
    double enclosure_T = 0.0;     // K, roof/dry wall temperature
    double total = 0.0;
};

TankLosses tank_losses(const TankSpec& spec, const TankState& state, double ambient_T);

struct ExchangerSpec {
    double tube_spacing = 0.0;
    double tube_len = 0.0;
    double d_in = 0.0;
    double d_out = 0.0;
    double baffle_cut = 0.0;
    double n_baffles = 0.0;
    double n_tubes = 0.0;
    int n_shell_passes = 1;
    int n_tube_passes = 1;
    bool idealized = false;
};

/// Steam delivered to the turbine inlet.
struct SteamDemand {
    double mass_flow = 0.0;  // kg/s
    double inlet_T = 0.0;    // K
    double pressure = 0.0;   // MPa
};

double saturation_T(double pressure_mpa);
/// Enthalpy rise feedwater -> superheated steam, kJ/kg.
double steam_enthalpy_rise(double steam_T, double pressure_mpa);
SteamDemand steam_for_thermal(double thermal_kw, double steam_T, double pressure_mpa);

struct ExchangerResult {
    double salt_flow = 0.0;    // kg/s
    double salt_outlet_T = 0.0;
    double shell_dp = 0.0;     // MPa
    double tube_dp = 0.0;      // MPa
    double effectiveness = 0.0;
    double duty_kw = 0.0;
    bool feasible = true;      // demand met within the flow limit
    bool valid = true;         // geometry usable at all
};

ExchangerResult exchanger_required_flow(const ExchangerSpec& spec, double hot_salt_T, const SteamDemand& demand,
                                        double max_salt_flow = std::numeric_limits<double>::infinity());

/// Largest duty (kW) deliverable with at most max_salt_flow.
double exchanger_capacity(const ExchangerSpec& spec, double hot_salt_T, double steam_T, double pressure_mpa,
                          double max_salt_flow);

struct PlantConfig {
    ReceiverSpec receiver;
    TankSpec hot;
    TankSpec cold;
    ExchangerSpec exchanger;
    power::TurbineRecord turbine;
    double tower_h = 0.0;
    double receiver_outlet_T = 0.0;
    double heater_setpoint = 0.0;   // K, anti-freeze thermostat for both tanks
    double heater_flux = 0.15;      // kW per m2 of tank wall
};

struct PlantState {
    double hot_mass = 0.0;  // kg
    double hot_T = 0.0;
    double cold_mass = 0.0;
    double cold_T = 0.0;
    double time = 0.0;      // s since start
    bool failed = false;    // hidden-constraint failure raised during the run

    // Window totals, kWh.
    double absorbed = 0.0;
    double steam = 0.0;
    double electric = 0.0;
    double unmet = 0.0;
    double losses = 0.0;
    double heater = 0.0;
    double pump_receiver = 0.0;
    double pump_shell = 0.0;
    double pump_tubes = 0.0;
    double met_seconds = 0.0;  // time with demand fully served

    // Extremes.
    double min_hot_T = std::numeric_limits<double>::infinity();
    double min_cold_T = std::numeric_limits<double>::infinity();
    double min_sg_out_T = std::numeric_limits<double>::infinity();
    double max_receiver_flow = 0.0;
    double max_wall_T = 0.0;  // receiver tubes, K
    double max_shell_dp = 0.0;
    double max_tube_dp = 0.0;

    double energy_residual = 0.0;  // last step, relative

    double total_mass() const { return hot_mass + cold_mass; }
    double hot_level(const PlantConfig& cfg) const;
    double cold_level(const PlantConfig& cfg) const;
    /// Sensible heat of the hot tank above the melting point, kWh.
    double hot_energy() const;
};

/// Tanks at half level, hot at the receiver target, cold 10 K above the heater setpoint.
PlantState initial_state(const PlantConfig& cfg);

struct StepInput {
    double field_kw = 0.0;     // incident on the aperture
    double forecast_kw = 0.0;  // what the flow controller plans for
    double demand_kw = 0.0;    // electric
    double ambient_T = 293.15;
};

struct StepTrace {
    double absorbed_kw = 0.0;
    double steam_kw = 0.0;
    double electric_kw = 0.0;
    double receiver_flow = 0.0;
    double sg_flow = 0.0;
    double loss_kw = 0.0;
    double heater_kw = 0.0;
    double residual_kj = 0.0;
    double scale_kj = 0.0;
};

PlantState step_cycle(const PlantConfig& cfg, const PlantState& state, double dt, const StepInput& in,
                      StepTrace* trace = nullptr);

}  // namespace solar::thermal
