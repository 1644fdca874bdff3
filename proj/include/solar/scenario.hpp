#pragma once

#include "solar/detrng.hpp"
#include "solar/heliofield.hpp"
#include "solar/instances.hpp"
#include "solar/thermal_loop.hpp"

#include <array>
#include <memory>
#include <vector>

// Instance simulators. A Scenario holds everything derived from x that the
// replications of one evaluation share; each run then only replays the
// time loop under its own noise.
namespace solar::sim {

inline constexpr double kFullStepSeconds = 600.0;
inline constexpr int kMinSteps = 24;

struct Resolution {
    int steps = 0;
    int rays = 0;
    double dt = 0.0;  // s
};

/// steps = max(24, round(phi * N_full)), rays = max(1, round(phi * 64)).
Resolution fidelity_map(const InstanceSpec& spec, double phi);

struct NoiseModel {
    double daily_sigma = 0.0;   // lognormal irradiance factor, one draw per day
    double step_sigma = 0.0;    // lognormal irradiance factor, one draw per step
    double demand_sigma = 0.0;  // relative demand jitter, one draw per step
    double ambient_sigma = 0.0; // K, ambient temperature offset, one draw per day
};

const NoiseModel& noise_model(int id);

/// Values at flat output positions; positions a run does not produce stay FAIL.
struct RunOutputs {
    std::vector<double> values;
    bool failed = false;
};

struct TraceRow {
    double t_s = 0.0;
    thermal::PlantState state;
    thermal::StepTrace step;
    double field_kw = 0.0;
    double demand_kw = 0.0;
};

/// Hourly clear-sky power (kW) on the aperture, entry i at hour i + 1/2.
std::vector<double> clear_sky_table(const field::FieldParams& params, const field::Aperture& ap,
                                    const field::FieldSelection& sel, int rays, int day_of_year, double latitude);

/// Rows (hour, kW) of the precomputed field tables shipped for SOLAR5 (30
/// days with weather) and SOLAR6 (one clear day), rounded to 0.1 kW.
std::vector<std::array<double, 2>> fixed_field_table(int id);

/// Sun-up hourly instants of one day, used for rating and tracing.
std::vector<field::SunState> rating_instants(int day_of_year, double latitude);

class Scenario {
public:
    Scenario(int id, const DesignPoint& x, const Resolution& res);
    ~Scenario();
    Scenario(const Scenario&) = delete;
    Scenario& operator=(const Scenario&) = delete;

    /// Noise-free run; fills the deterministic outputs.
    RunOutputs nominal() const;
    /// Run under noise drawn from rng; fills the stochastic outputs.
    RunOutputs noisy(RngState& rng) const;
    /// Per-step states of the noise-free run (full-plant instances only).
    std::vector<TraceRow> trace() const;

    struct Impl;

private:
    std::unique_ptr<Impl> impl_;
};

}  // namespace solar::sim
