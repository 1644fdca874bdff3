#include "solar/scenario.hpp"

#include "solar/data.hpp"
#include "solar/detmath.hpp"
#include "solar/economics.hpp"
#include "solar/powerblock.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace solar::sim {
namespace {

using thermal::ExchangerSpec;
using thermal::PlantConfig;
using thermal::PlantState;
using thermal::ReceiverSpec;
using thermal::TankSpec;

constexpr int kDay = 172;
constexpr int kEquinox = 80;
constexpr double kAmbient = 293.15;
constexpr double kReceiverInlet = 565.0;  // K, salt fed to stand-alone receivers
constexpr double kHeaterDefault = 530.0;  // K, heater setpoint when not a variable

enum class Kind { Field, Receiver, Plant };

double xv(const DesignPoint& x, int i) { return x[static_cast<std::size_t>(i - 1)]; }
int xi(const DesignPoint& x, int i) { return static_cast<int>(xv(x, i)); }

field::FieldParams field_from(const DesignPoint& x) {
    field::FieldParams f;
    f.heliostat_l = xv(x, 1);
    f.heliostat_w = xv(x, 2);
    f.tower_h = xv(x, 3);
    f.angular_width = xv(x, 7);
    f.r_min = xv(x, 8);
    f.r_max = xv(x, 9);
    return f;
}

TankSpec hot_tank(double h, double d, double t) { return TankSpec{t, h, d}; }
TankSpec cold_tank(double h, double d, double t) { return TankSpec{t, 1.2 * h, d}; }

ExchangerSpec exchanger_from(const DesignPoint& x, int first) {
    ExchangerSpec e;
    e.tube_spacing = xv(x, first);
    e.tube_len = xv(x, first + 1);
    e.d_in = xv(x, first + 2);
    e.d_out = xv(x, first + 3);
    e.baffle_cut = xv(x, first + 4);
    e.n_baffles = xv(x, first + 5);
    e.n_tubes = xv(x, first + 6);
    e.n_shell_passes = xi(x, first + 7);
    e.n_tube_passes = xi(x, first + 8);
    return e;
}

ExchangerSpec idealized_exchanger() {
    ExchangerSpec e;
    e.idealized = true;
    return e;
}

std::vector<double> read_column(const std::string& file, std::size_t col) {
    std::vector<double> out;
    for (const auto& row : data::parse_csv(data::file(file))) out.push_back(row.at(col));
    return out;
}

// Fixed plants of the instances that do not optimize the field.
struct FixedField {
    field::FieldParams params;
    double n_heliostats;
};

const FixedField kSolar5Field{{10.0, 10.0, 150.0, 60.0, 1.0, 5.5}, 1400.0};
const FixedField kSolar6Field{{12.0, 12.0, 250.0, 89.0, 1.0, 6.0}, 8500.0};
const FixedField kSolar7Field{{8.0, 8.0, 100.0, 60.0, 1.0, 5.0}, 1000.0};

}  // namespace

Resolution fidelity_map(const InstanceSpec& spec, double phi) {
    const double full = 3600.0 / kFullStepSeconds * spec.window_hours;
    Resolution r;
    r.steps = std::max(kMinSteps, static_cast<int>(std::lround(phi * full)));
    r.rays = std::max(1, static_cast<int>(std::lround(phi * field::kFullRays)));
    r.dt = spec.window_hours * 3600.0 / r.steps;
    return r;
}

const NoiseModel& noise_model(int id) {
    static const NoiseModel none{};
    static const NoiseModel plant{0.05, 0.08, 0.05, 8.0};
    static const NoiseModel field{0.05, 0.08, 0.0, 8.0};
    switch (id) {
        case 1:
        case 7:
        case 8: return field;
        case 2:
        case 3:
        case 4:
        case 9: return plant;
        default: return none;
    }
}

std::vector<field::SunState> rating_instants(int day_of_year, double latitude) {
    std::vector<field::SunState> out;
    for (int h = 0; h < 24; ++h) {
        field::SunState s = field::sun_position(latitude, day_of_year, h * 60.0 + 30.0);
        s.time = h * 60.0 + 30.0;
        if (s.above_horizon) out.push_back(s);
    }
    return out;
}

std::vector<double> clear_sky_table(const field::FieldParams& params, const field::Aperture& ap,
                                    const field::FieldSelection& sel, int rays, int day_of_year, double latitude) {
    std::vector<double> table(24, 0.0);
    if (sel.heliostats.empty()) return table;
    const field::FieldTracer tracer(params, ap, sel);
    for (const field::SunState& s : rating_instants(day_of_year, latitude))
        table[static_cast<std::size_t>(s.time / 60.0)] = tracer.power(s, rays);
    return table;
}

std::vector<std::array<double, 2>> fixed_field_table(int id) {
    if (id != 5 && id != 6) throw UsageError("only SOLAR5 and SOLAR6 use a precomputed field");
    const FixedField& ff = id == 5 ? kSolar5Field : kSolar6Field;
    const field::Aperture ap = id == 5 ? field::Aperture{6.0, 6.0} : field::Aperture{25.0, 25.0};
    const field::FieldLayout layout = field::generate_grid(ff.params);
    const field::FieldSelection sel = field::select_best(layout, ap, rating_instants(kDay, ff.params.latitude),
                                                         static_cast<std::int64_t>(ff.n_heliostats));
    const int days = id == 5 ? 30 : 1;
    RngState rng = seed_stream(0x50A5, static_cast<std::uint64_t>(id));
    std::vector<std::array<double, 2>> rows;
    for (int d = 0; d < days; ++d) {
        const std::vector<double> clear = clear_sky_table(ff.params, ap, sel, field::kFullRays, kDay + d, ff.params.latitude);
        double weather = 1.0;
        if (id == 5) {
            weather = std::min(1.0, dm::exp(0.2 * rng.next_gaussian() - 0.02));
            if (rng.next_unit() < 0.15) weather *= 0.35;
        }
        for (int h = 0; h < 24; ++h) {
            double v = clear[static_cast<std::size_t>(h)] * weather;
            if (id == 5) v *= std::max(0.0, 1.0 + 0.05 * rng.next_gaussian());
            rows.push_back({static_cast<double>(d * 24 + h), std::round(v * 10.0) / 10.0});
        }
    }
    return rows;
}

struct Scenario::Impl {
    int id = 0;
    const InstanceSpec* spec = nullptr;
    Resolution res;
    Kind kind = Kind::Plant;
    bool hidden = false;  // geometry already known to break the simulator

    std::vector<double> table;   // hourly clear-sky kW on the aperture
    std::vector<double> demand;  // hourly electric kW
    double n_heliostats = 0.0;
    double fit_slack = 0.0;
    double tower_h = 0.0;
    double design_power = 0.0;   // peak clear-sky kW, for the stand-alone receiver

    PlantConfig cfg;
    ReceiverSpec rcv;
    double rcv_outlet = 0.0;
    econ::CostBreakdown cost;

    double clear_at(double t_h) const {
        const double u = t_h - 0.5;
        const double fl = std::floor(u);
        const long n = static_cast<long>(table.size());
        const long i0 = ((static_cast<long>(fl) % n) + n) % n;
        const long i1 = (i0 + 1) % n;
        const double w = u - fl;
        return table[static_cast<std::size_t>(i0)] * (1.0 - w) + table[static_cast<std::size_t>(i1)] * w;
    }

    double demand_at(double t_h) const {
        if (id == 9) return cfg.turbine.p_max;
        if (demand.empty()) return 0.0;
        const std::size_t i = static_cast<std::size_t>(std::floor(t_h)) % demand.size();
        return demand[i];
    }

    struct Noise {
        std::vector<double> field, forecast, demand, ambient;
    };

    Noise draw(RngState* rng) const {
        Noise n;
        const std::size_t steps = static_cast<std::size_t>(res.steps);
        n.field.assign(steps, 1.0);
        n.forecast.assign(steps, 1.0);
        n.demand.assign(steps, 1.0);
        n.ambient.assign(steps, kAmbient);
        if (!rng) return n;
        const NoiseModel& nm = noise_model(id);
        double daily = 1.0;
        double ambient = kAmbient;
        long day = -1;
        double prev = 1.0;
        for (std::size_t k = 0; k < steps; ++k) {
            const long d = static_cast<long>(std::floor(static_cast<double>(k) * res.dt / 86400.0));
            if (d != day) {
                day = d;
                const double g = rng->next_gaussian();
                daily = dm::exp(nm.daily_sigma * g - 0.5 * nm.daily_sigma * nm.daily_sigma);
                ambient = kAmbient + nm.ambient_sigma * rng->next_gaussian();
                if (k == 0) prev = daily;
            }
            const double g1 = rng->next_gaussian();
            const double g2 = rng->next_gaussian();
            const double f = daily * dm::exp(nm.step_sigma * g1 - 0.5 * nm.step_sigma * nm.step_sigma);
            n.field[k] = f;
            n.forecast[k] = prev;
            n.ambient[k] = ambient;
            n.demand[k] = std::max(0.0, 1.0 + nm.demand_sigma * g2);
            prev = f;
        }
        return n;
    }

    // Quantities one run produces, whatever the instance.
    struct Run {
        bool failed = false;
        double incident = 0.0;  // kWh on the aperture
        double daylight_h = 0.0;
        double min_reserve = std::numeric_limits<double>::infinity();  // electric kWh
        double design_absorbed = 0.0;  // kW
        PlantState st;
    };

    Run run(const Noise& noise, std::vector<TraceRow>* trace) const {
        Run r;
        if (hidden) {
            r.failed = true;
            return r;
        }
        const double dt = res.dt;
        const double h = dt / 3600.0;
        if (kind == Kind::Plant) r.st = thermal::initial_state(cfg);
        const double reserve_eff =
            kind == Kind::Plant ? power::max_efficiency(cfg.turbine) * power::kMechToElectric : 0.0;
        for (int k = 0; k < res.steps; ++k) {
            const std::size_t ks = static_cast<std::size_t>(k);
            const double t_mid = (k + 0.5) * h;
            const double clear = clear_at(t_mid);
            const double field_kw = clear * noise.field[ks];
            r.incident += field_kw * h;
            if (clear > 0.0) r.daylight_h += h;
            if (kind == Kind::Field) continue;
            if (kind == Kind::Receiver) {
                if (field_kw <= 0.0) continue;
                const thermal::ReceiverResult a = thermal::receiver_absorb(rcv, field_kw, kReceiverInlet, rcv_outlet, noise.ambient[ks]);
                if (!a.converged) {
                    r.failed = true;
                    return r;
                }
                r.st.absorbed += a.absorbed_kw * h;
                r.st.max_receiver_flow = std::max(r.st.max_receiver_flow, a.salt_flow);
                r.st.max_wall_T = std::max(r.st.max_wall_T, a.wall_T);
                if (a.salt_flow > 0.0) {
                    const double dp = thermal::receiver_pressure_drop(rcv, a.salt_flow, 0.5 * (kReceiverInlet + rcv_outlet)) * 1.0e6 +
                                      thermal::kSaltRho * thermal::kGravity * tower_h;
                    r.st.pump_receiver += a.salt_flow * dp / thermal::kSaltRho / thermal::kPumpEfficiency / 1000.0 * h;
                }
                continue;
            }
            thermal::StepInput in;
            in.field_kw = field_kw;
            in.forecast_kw = clear * noise.forecast[ks];
            in.demand_kw = demand_at(t_mid) * noise.demand[ks];
            in.ambient_T = noise.ambient[ks];
            thermal::StepTrace st;
            r.st = thermal::step_cycle(cfg, r.st, dt, in, trace ? &st : nullptr);
            if (trace) trace->push_back({(k + 1) * dt, r.st, st, field_kw, in.demand_kw});
            const double reserve = r.st.hot_mass * thermal::kSaltCp * std::max(0.0, r.st.hot_T - thermal::kFeedwaterT) / 3600.0;
            if (in.demand_kw > 0.0) r.min_reserve = std::min(r.min_reserve, reserve * reserve_eff);
            if (r.st.failed) {
                r.failed = true;
                return r;
            }
        }
        if (kind == Kind::Receiver) {
            const thermal::ReceiverResult a = thermal::receiver_absorb(rcv, design_power, kReceiverInlet, rcv_outlet, kAmbient);
            if (!a.converged) r.failed = true;
            r.design_absorbed = a.absorbed_kw;
        }
        return r;
    }

    double receiver_pressure(const Run& r) const {
        const ReceiverSpec& spec = kind == Kind::Plant ? cfg.receiver : rcv;
        const double inlet = kind == Kind::Plant ? cfg.heater_setpoint : kReceiverInlet;
        const double outlet = kind == Kind::Plant ? cfg.receiver_outlet_T : rcv_outlet;
        double p = thermal::kAtmosphere + thermal::kSaltRho * thermal::kGravity * tower_h / 1.0e6;
        if (r.st.max_receiver_flow > 0.0) p += thermal::receiver_pressure_drop(spec, r.st.max_receiver_flow, 0.5 * (inlet + outlet));
        const double wall = r.st.max_wall_T > 0.0 ? r.st.max_wall_T : inlet;
        return econ::tube_yield_margin(spec.d_in, spec.d_out, p, econ::yield_at(wall));
    }

    double compliance(const Run& r) const {
        if (r.st.unmet > 0.0) return r.st.unmet;
        return std::isfinite(r.min_reserve) ? -r.min_reserve : 0.0;
    }

    double parasitics(const Run& r) const {
        return econ::parasitic_total(n_heliostats, r.daylight_h, r.st).total();
    }

    double sg_outlet_margin(const Run& r) const {
        const double t = std::isfinite(r.st.min_sg_out_T) ? r.st.min_sg_out_T : thermal::kFeedwaterT;
        return thermal::kSaltMelt - t;
    }

    double storage_back(const Run& r) const {
        return thermal::initial_state(cfg).hot_energy() - r.st.hot_energy();
    }

    // Writes the outputs of class `cls` computed from run r into v.
    void assemble(const Run& r, OutputClass cls, std::vector<double>& v) const {
        auto put = [&](int pos, double value) {
            if (spec->outputs[static_cast<std::size_t>(pos)].cls == cls) v[static_cast<std::size_t>(pos)] = value;
        };
        const int p = spec->p;
        auto c = [p](int i) { return p + i - 1; };
        switch (id) {
            case 1:
                put(0, -r.incident);
                put(c(1), cost.total - spec->budget);
                put(c(5), fit_slack);
                break;
            case 2:
                put(c(2), compliance(r));
                put(c(3), cost.total - spec->budget);
                put(c(6), fit_slack);
                put(c(7), receiver_pressure(r));
                put(c(8), thermal::kSaltMelt - r.st.min_hot_T);
                put(c(9), thermal::kSaltMelt - r.st.min_cold_T);
                put(c(12), cfg.turbine.inlet_T - cfg.receiver_outlet_T);
                break;
            case 3:
                put(0, cost.total);
                put(c(2), compliance(r));
                put(c(5), fit_slack);
                put(c(6), receiver_pressure(r));
                put(c(7), thermal::kSaltMelt - r.st.min_hot_T);
                put(c(8), thermal::kSaltMelt - r.st.min_cold_T);
                put(c(9), sg_outlet_margin(r));
                put(c(12), cfg.turbine.inlet_T - cfg.receiver_outlet_T);
                put(c(13), storage_back(r));
                break;
            case 4:
                put(0, cost.total);
                put(c(2), compliance(r));
                put(c(5), fit_slack);
                put(c(6), receiver_pressure(r));
                put(c(7), thermal::kSaltMelt - r.st.min_hot_T);
                put(c(8), thermal::kSaltMelt - r.st.min_cold_T);
                put(c(9), sg_outlet_margin(r));
                put(c(12), cfg.turbine.inlet_T - cfg.receiver_outlet_T);
                put(c(13), parasitics(r) - spec->parasitic_ratio * r.st.electric);
                put(c(16), econ::tube_yield_margin(cfg.exchanger.d_in, cfg.exchanger.d_out, cfg.turbine.inlet_P));
                break;
            case 5:
                put(0, -r.st.met_seconds / 86400.0);
                put(c(1), cost.total - spec->budget);
                put(c(2), receiver_pressure(r));
                put(c(3), thermal::kSaltMelt - r.st.min_hot_T);
                put(c(4), thermal::kSaltMelt - r.st.min_cold_T);
                put(c(5), sg_outlet_margin(r));
                put(c(8), cfg.turbine.inlet_T - cfg.receiver_outlet_T);
                put(c(9), parasitics(r) - spec->parasitic_ratio * r.st.electric);
                put(c(12), econ::tube_yield_margin(cfg.exchanger.d_in, cfg.exchanger.d_out, cfg.turbine.inlet_P));
                break;
            case 6:
                put(0, cost.hot_storage + cost.cold_storage);
                put(c(1), compliance(r));
                put(c(2), receiver_pressure(r));
                put(c(3), thermal::kSaltMelt - r.st.min_hot_T);
                put(c(4), thermal::kSaltMelt - r.st.min_cold_T);
                put(c(5), cfg.turbine.inlet_T - cfg.receiver_outlet_T);
                put(c(6), storage_back(r));
                break;
            case 7:
                put(0, r.incident > 0.0 ? -100.0 * r.st.absorbed / r.incident : 0.0);
                put(c(1), cost.total - spec->budget);
                put(c(2), receiver_pressure(r));
                put(c(4), kSolar7DesignPower - r.design_absorbed);
                put(c(6), parasitics(r) - spec->parasitic_ratio * r.st.absorbed);
                break;
            case 8:
                put(0, -r.st.absorbed);
                put(1, cost.total);
                put(c(4), fit_slack);
                put(c(5), receiver_pressure(r));
                put(c(8), kSolar8MinEnergy - r.st.absorbed);
                put(c(9), parasitics(r) - spec->parasitic_ratio * r.st.absorbed);
                break;
            case 9:
                put(0, -r.st.electric);
                put(1, parasitics(r));
                put(c(1), cost.total - spec->budget);
                put(c(2), kSolar9MinEnergy - r.st.electric);
                put(c(6), fit_slack);
                put(c(7), receiver_pressure(r));
                put(c(8), thermal::kSaltMelt - r.st.min_hot_T);
                put(c(9), thermal::kSaltMelt - r.st.min_cold_T);
                put(c(10), sg_outlet_margin(r));
                put(c(13), cfg.turbine.inlet_T - cfg.receiver_outlet_T);
                put(c(14), parasitics(r) - spec->parasitic_ratio * r.st.electric);
                put(c(17), econ::tube_yield_margin(cfg.exchanger.d_in, cfg.exchanger.d_out, cfg.turbine.inlet_P));
                break;
            default: break;
        }
    }

    static constexpr double kSolar7DesignPower = 30000.0;  // kW
    static constexpr double kSolar8MinEnergy = 300000.0;   // kWh
    static constexpr double kSolar9MinEnergy = 250000.0;   // kWh

    void build_field(const field::FieldParams& params, const field::Aperture& ap, double n_hf, int day) {
        // x3 * x8 = 0 leaves the field geometry undefined.
        if (params.tower_h * params.r_min == 0.0) {
            hidden = true;
            n_heliostats = n_hf;
            return;
        }
        const field::FieldLayout layout = field::generate_grid(params);
        const auto instants = rating_instants(day, params.latitude);
        const field::FieldSelection sel = field::select_best(layout, ap, instants, static_cast<std::int64_t>(n_hf));
        fit_slack = static_cast<double>(sel.fit_slack);
        n_heliostats = n_hf;
        table = clear_sky_table(params, ap, sel, res.rays, day, params.latitude);
        design_power = *std::max_element(table.begin(), table.end());
    }

    void build(const DesignPoint& x) {
        switch (id) {
            case 1: {
                kind = Kind::Field;
                const field::FieldParams fp = field_from(x);
                tower_h = fp.tower_h;
                build_field(fp, {xv(x, 4), xv(x, 5)}, xv(x, 6), kEquinox);
                econ::PlantDesign d;
                d.heliostat_l = fp.heliostat_l;
                d.heliostat_w = fp.heliostat_w;
                d.n_heliostats = xv(x, 6);
                d.tower_h = fp.tower_h;
                cost = econ::total_cost(d);
                return;
            }
            case 7:
            case 8: {
                kind = Kind::Receiver;
                field::FieldParams fp;
                double n_hf = 0.0;
                int r0 = 0;
                if (id == 7) {
                    fp = kSolar7Field.params;
                    n_hf = kSolar7Field.n_heliostats;
                    rcv = ReceiverSpec{xv(x, 1), xv(x, 2), xv(x, 4), xv(x, 6), xv(x, 7), xv(x, 5)};
                    rcv_outlet = xv(x, 3);
                } else {
                    fp = field_from(x);
                    n_hf = xv(x, 6);
                    r0 = 10;
                    rcv = ReceiverSpec{xv(x, 4), xv(x, 5), xv(x, r0), xv(x, r0 + 2), xv(x, r0 + 3), xv(x, r0 + 1)};
                    rcv_outlet = 838.15;
                }
                tower_h = fp.tower_h;
                build_field(fp, {rcv.aperture_h, rcv.aperture_w}, n_hf, kDay);
                econ::PlantDesign d;
                d.heliostat_l = fp.heliostat_l;
                d.heliostat_w = fp.heliostat_w;
                d.n_heliostats = n_hf;
                d.tower_h = fp.tower_h;
                d.receiver = rcv;
                cost = econ::total_cost(d);
                return;
            }
            default: break;
        }

        kind = Kind::Plant;
        econ::PlantDesign d;
        PlantConfig& c = cfg;
        if (id == 5 || id == 6 || id == 10) {
            const FixedField& ff = id == 5 ? kSolar5Field : kSolar6Field;
            table = read_column(id == 5 ? "solar5_field.csv" : "solar6_field.csv", 1);
            n_heliostats = ff.n_heliostats;
            tower_h = ff.params.tower_h;
            d.heliostat_l = ff.params.heliostat_l;
            d.heliostat_w = ff.params.heliostat_w;
            d.n_heliostats = ff.n_heliostats;
            d.tower_h = tower_h;
            c.receiver_outlet_T = xv(x, 1);
            if (id == 5) {
                c.hot = hot_tank(xv(x, 2), xv(x, 3), xv(x, 4));
                c.cold = cold_tank(xv(x, 2), xv(x, 3), xv(x, 5));
                c.heater_setpoint = xv(x, 6);
                c.receiver = ReceiverSpec{6.0, 6.0, xv(x, 7), xv(x, 9), xv(x, 10), xv(x, 8)};
                c.exchanger = exchanger_from(x, 11);
                c.turbine = power::turbine_lookup(xi(x, 20));
            } else {
                c.hot = hot_tank(xv(x, 2), xv(x, 3), xv(x, 4));
                c.cold = cold_tank(xv(x, 2), xv(x, 3), xv(x, 5));
                c.heater_setpoint = kHeaterDefault;
                c.receiver = ReceiverSpec{25.0, 25.0, 1000.0, 0.030, 0.035, 0.5};
                c.exchanger = idealized_exchanger();
                c.turbine = power::turbine_lookup(8);
            }
        } else {
            const field::FieldParams fp = field_from(x);
            tower_h = fp.tower_h;
            d.heliostat_l = fp.heliostat_l;
            d.heliostat_w = fp.heliostat_w;
            d.n_heliostats = xv(x, 6);
            d.tower_h = tower_h;
            c.receiver_outlet_T = xv(x, 10);
            if (id == 2) {
                c.receiver = ReceiverSpec{xv(x, 4), xv(x, 5), xv(x, 11), xv(x, 13), xv(x, 14), xv(x, 12)};
                c.hot = hot_tank(12.0, 20.0, 0.4);
                c.cold = cold_tank(12.0, 20.0, 0.4);
                c.heater_setpoint = kHeaterDefault;
                c.exchanger = idealized_exchanger();
                c.turbine = power::turbine_lookup(3);
            } else {
                c.hot = hot_tank(xv(x, 11), xv(x, 12), xv(x, 13));
                c.cold = cold_tank(xv(x, 11), xv(x, 12), xv(x, 14));
                c.heater_setpoint = xv(x, 15);
                c.receiver = ReceiverSpec{xv(x, 4), xv(x, 5), xv(x, 16), xv(x, 18), xv(x, 19), xv(x, 17)};
                if (id == 3) {
                    c.exchanger = idealized_exchanger();
                    c.turbine = power::turbine_lookup(xi(x, 20));
                } else {
                    c.exchanger = exchanger_from(x, 20);
                    c.turbine = power::turbine_lookup(xi(x, 29));
                }
            }
            build_field(fp, {xv(x, 4), xv(x, 5)}, xv(x, 6), kDay);
        }
        c.tower_h = tower_h;
        if (!spec->demand_file.empty()) demand = read_column(spec->demand_file, 1);
        d.receiver = c.receiver;
        d.hot = c.hot;
        d.cold = c.cold;
        d.exchanger = c.exchanger;
        d.turbine = c.turbine.id;
        cost = econ::total_cost(d);
    }

    RunOutputs outputs(const Run& r, OutputClass cls) const {
        RunOutputs o;
        o.values.assign(static_cast<std::size_t>(spec->p + spec->m), kFail);
        o.failed = r.failed;
        if (r.failed) return o;
        assemble(r, cls, o.values);
        for (std::size_t i = 0; i < o.values.size(); ++i) {
            if (spec->outputs[i].cls != cls) continue;
            if (!std::isfinite(o.values[i])) {
                o.failed = true;
                o.values[i] = kFail;
            }
        }
        return o;
    }
};

Scenario::Scenario(int id, const DesignPoint& x, const Resolution& res) : impl_(std::make_unique<Impl>()) {
    impl_->id = id == 10 ? 6 : id;
    impl_->spec = &instance_spec(impl_->id);
    impl_->res = res;
    impl_->build(x);
}

Scenario::~Scenario() = default;

RunOutputs Scenario::nominal() const {
    const Impl::Run r = impl_->run(impl_->draw(nullptr), nullptr);
    return impl_->outputs(r, OutputClass::Deterministic);
}

RunOutputs Scenario::noisy(RngState& rng) const {
    const Impl::Run r = impl_->run(impl_->draw(&rng), nullptr);
    return impl_->outputs(r, OutputClass::Stochastic);
}

std::vector<TraceRow> Scenario::trace() const {
    std::vector<TraceRow> rows;
    if (impl_->kind == Kind::Plant) impl_->run(impl_->draw(nullptr), &rows);
    return rows;
}

}  // namespace solar::sim
