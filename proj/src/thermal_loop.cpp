#include "solar/thermal_loop.hpp"

#include "solar/detmath.hpp"

#include <algorithm>
#include <cmath>

namespace solar::thermal {
namespace {

constexpr double kPi = dm::kPi;

// Receiver cavity.
constexpr double kAbsorptance = 0.93;
constexpr double kEmittance = 0.87;
constexpr double kReceiverInsulK = 0.07;   // W/m K
constexpr double kReceiverOuterH = 20.0;   // W/m2 K
constexpr double kTubeWallK = 20.0;        // W/m K
constexpr double kBendLoss = 1.5;          // velocity heads per panel turn

// Tanks.
constexpr double kTankInsulK = 0.06;
constexpr double kFoundationR = 0.25;  // m2 K/W below the floor insulation
constexpr double kWind = 6.0;          // m/s
constexpr double kAirNu = 1.6e-5;
constexpr double kAirK = 0.026;
constexpr double kAirPr = 0.71;
constexpr double kOuterEmittance = 0.9;
constexpr double kSaltEmittance = 0.9;
constexpr double kLinerEmittance = 0.8;

// Steam generator water side, lumped liquid-like properties.
constexpr double kWaterRho = 700.0;
constexpr double kWaterMu = 1.0e-4;
constexpr double kWaterK = 0.5;
constexpr double kWaterPr = 1.0;
constexpr double kEpsCeiling = 1.0 - 1e-12;

double sq(double x) { return x * x; }

// Darcy friction in a smooth tube, laminar and Blasius joined linearly.
double darcy_friction(double re) {
    if (re <= 0.0) return 0.0;
    const double lam = 64.0 / re;
    if (re <= 2300.0) return lam;
    const double turb = 0.3164 / dm::pow(re, 0.25);
    if (re >= 4000.0) return turb;
    const double w = (re - 2300.0) / 1700.0;
    return (1.0 - w) * (64.0 / 2300.0) + w * 0.3164 / dm::pow(4000.0, 0.25);
}

double gnielinski(double re, double pr) {
    const double f = 1.0 / sq(0.79 * dm::log(re) - 1.64);
    return (f / 8.0) * (re - 1000.0) * pr / (1.0 + 12.7 * std::sqrt(f / 8.0) * (dm::pow(pr, 2.0 / 3.0) - 1.0));
}

// Tube Nusselt number: fully developed laminar, Gnielinski above 4000, blended between.
double tube_nusselt(double re, double pr) {
    if (re <= 2300.0) return 4.36;
    if (re >= 4000.0) return gnielinski(re, pr);
    const double w = (re - 2300.0) / 1700.0;
    return (1.0 - w) * 4.36 + w * gnielinski(4000.0, pr);
}

struct CavityGeom {
    double aperture, absorber, cavity;
};

CavityGeom cavity_geometry(const ReceiverSpec& s) {
    const double ap = s.aperture_w * s.aperture_h;
    const double abs = 0.5 * kPi * s.aperture_w * s.aperture_h;
    return {ap, abs, abs + 0.25 * kPi * s.aperture_w * s.aperture_w};
}

double effective_property(double surface, const CavityGeom& g) {
    return surface / (surface + (1.0 - surface) * g.aperture / g.cavity);
}

// Receiver UA (W/K) between tube surface and bulk salt at a given flow.
double receiver_ua(const ReceiverSpec& s, double flow, double mean_T) {
    const double per_tube = flow * kReceiverPanels / s.n_tubes;
    const double mu = salt_viscosity(mean_T);
    const double k = salt_conductivity(mean_T);
    const double re = 4.0 * per_tube / (kPi * s.d_in * mu);
    const double pr = kSaltCp * 1000.0 * mu / k;
    const double h_in = tube_nusselt(re, pr) * k / s.d_in;
    const double r_area = s.d_out / (s.d_in * h_in) + s.d_out * dm::log(s.d_out / s.d_in) / (2.0 * kTubeWallK);
    const double area = s.n_tubes * 0.5 * kPi * s.d_out * s.aperture_h;
    return area / r_area;
}

double churchill_bernstein(double re, double pr) {
    const double a = 0.62 * std::sqrt(re) * dm::pow(pr, 1.0 / 3.0) / dm::pow(1.0 + dm::pow(0.4 / pr, 2.0 / 3.0), 0.25);
    return 0.3 + a * dm::pow(1.0 + dm::pow(re / 282000.0, 0.625), 0.8);
}

struct TankCoefficients {
    double floor_u;    // W/m2 K
    double ceiling_u;  // W/m2 K
    double wall_g;     // W/K per metre of height
};

TankCoefficients tank_coefficients(const TankSpec& spec, double ambient_T) {
    const double d_o = spec.diameter + 2.0 * spec.insul_t;
    const double re = kWind * d_o / kAirNu;
    const double h_rad = 4.0 * kOuterEmittance * kSigma * ambient_T * ambient_T * ambient_T;
    const double h_wall = churchill_bernstein(re, kAirPr) * kAirK / d_o + h_rad;
    const double nu_roof = std::max(0.664 * std::sqrt(re), 0.037 * dm::pow(re, 0.8)) * dm::pow(kAirPr, 1.0 / 3.0);
    const double h_roof = nu_roof * kAirK / d_o + h_rad;
    TankCoefficients c;
    c.floor_u = 1.0 / (spec.insul_t / kTankInsulK + kFoundationR);
    c.ceiling_u = 1.0 / (spec.insul_t / kTankInsulK + 1.0 / h_roof);
    const double r_i = 0.5 * spec.diameter;
    const double r_o = r_i + spec.insul_t;
    c.wall_g = 2.0 * kPi / (dm::log(r_o / r_i) / kTankInsulK + 1.0 / (h_wall * r_o));
    return c;
}

struct ShellSide {
    double area_cross;   // m2
    double area_window;  // m2
    double shell_d;      // m
    double equiv_d;      // m
    double jc;
    double rows_window;
    bool ok;
};

ShellSide shell_geometry(const ExchangerSpec& s) {
    ShellSide g{};
    g.ok = s.d_in > 0.0 && s.d_out > s.d_in && s.tube_spacing > s.d_out && s.n_tubes > 0.0 && s.tube_len > 0.0 &&
           s.baffle_cut > 0.0 && s.baffle_cut < 0.5 && s.n_tube_passes >= 1 && s.n_shell_passes >= 1;
    if (!g.ok) return g;
    g.shell_d = std::sqrt(4.0 * s.n_tubes * s.tube_spacing * s.tube_spacing / (0.9 * kPi));
    const double spacing = s.tube_len / (s.n_baffles + 1.0);
    g.area_cross = g.shell_d * spacing * (s.tube_spacing - s.d_out) / s.tube_spacing;
    g.equiv_d = 4.0 * (s.tube_spacing * s.tube_spacing - 0.25 * kPi * s.d_out * s.d_out) / (kPi * s.d_out);
    const double theta = 2.0 * dm::acos(1.0 - 2.0 * s.baffle_cut);
    const double fw = (theta - dm::sin(theta)) / (2.0 * kPi);
    g.jc = 0.55 + 0.72 * (1.0 - 2.0 * fw);
    g.area_window = fw * 0.25 * kPi * (g.shell_d * g.shell_d - s.n_tubes * s.d_out * s.d_out);
    g.rows_window = std::max(1.0, 0.8 * s.baffle_cut * g.shell_d / s.tube_spacing);
    g.ok = g.area_cross > 0.0 && g.area_window > 0.0;
    return g;
}

struct ExchangerEval {
    double duty;  // kW
    double eps;
    double shell_dp;  // Pa
    double tube_dp;   // Pa
};

// Duty and pressure drops at a given salt flow for a water stream of capacity c_w.
ExchangerEval exchanger_at(const ExchangerSpec& s, const ShellSide& g, double hot_T, double salt_flow, double c_w,
                           double water_flow) {
    ExchangerEval e{};
    const double mean_T = 0.5 * (hot_T + kFeedwaterT);
    const double mu = salt_viscosity(mean_T);
    const double k = salt_conductivity(mean_T);
    const double pr = kSaltCp * 1000.0 * mu / k;
    const double gs = salt_flow / g.area_cross;
    const double re_s = std::max(gs * g.equiv_d / mu, 1e-9);
    const double h_s = g.jc * 0.36 * (k / g.equiv_d) * dm::pow(re_s, 0.55) * dm::pow(pr, 1.0 / 3.0);

    const double tubes_per_pass = s.n_tubes / s.n_tube_passes;
    const double v_t = water_flow / (kWaterRho * tubes_per_pass * 0.25 * kPi * s.d_in * s.d_in);
    const double re_t = kWaterRho * v_t * s.d_in / kWaterMu;
    const double h_t = tube_nusselt(re_t, kWaterPr) * kWaterK / s.d_in;

    const double r_total = 1.0 / h_s + s.d_out * dm::log(s.d_out / s.d_in) / (2.0 * kTubeWallK) + s.d_out / (s.d_in * h_t);
    const double area = s.n_shell_passes * s.n_tubes * kPi * s.d_out * s.tube_len;
    const double ua = area / r_total / 1000.0;  // kW/K

    const double c_s = salt_flow * kSaltCp;
    const double c_min = std::min(c_s, c_w);
    const double c_max = std::max(c_s, c_w);
    const double cr = c_min / c_max;
    const double ntu = ua / c_min;
    double eps = 0.0;
    if (s.n_tube_passes == 1) {
        if (cr > 1.0 - 1e-12) {
            eps = ntu / (1.0 + ntu);
        } else {
            const double x = dm::exp(-ntu * (1.0 - cr));
            eps = (1.0 - x) / (1.0 - cr * x);
        }
    } else {
        const double n1 = ntu / s.n_shell_passes;
        const double root = std::sqrt(1.0 + cr * cr);
        const double x = dm::exp(-n1 * root);
        const double eps1 = 2.0 / (1.0 + cr + root * (1.0 + x) / (1.0 - x));
        const int n = s.n_shell_passes;
        if (n == 1) {
            eps = eps1;
        } else if (cr > 1.0 - 1e-12) {
            eps = n * eps1 / (1.0 + (n - 1) * eps1);
        } else {
            const double ratio = dm::pow((1.0 - eps1 * cr) / (1.0 - eps1), static_cast<double>(n));
            eps = (ratio - 1.0) / (ratio - cr);
        }
    }
    if (!(eps == eps)) eps = 0.0;
    e.eps = std::clamp(eps, 0.0, kEpsCeiling);
    e.duty = e.eps * c_min * (hot_T - kFeedwaterT);

    // Shell side: Kern crossflow plus baffle-window turns.
    const double rho = kSaltRho;
    const double f_s = dm::exp(0.576 - 0.19 * dm::log(re_s));
    const double dp_cross = f_s * gs * gs * g.shell_d * (s.n_baffles + 1.0) / (2.0 * rho * g.equiv_d);
    const double v_w = salt_flow / (rho * g.area_window);
    const double dp_window = s.n_baffles * (2.0 + 0.6 * g.rows_window) * 0.5 * rho * v_w * v_w;
    e.shell_dp = s.n_shell_passes * (dp_cross + dp_window);
    // Tube side: Darcy friction plus four velocity heads per pass.
    e.tube_dp = s.n_shell_passes * s.n_tube_passes * (darcy_friction(re_t) * s.tube_len / s.d_in + 4.0) * 0.5 *
                kWaterRho * v_t * v_t;
    return e;
}

}  // namespace

double salt_viscosity(double T) {
    const double c = std::clamp(T - 273.15, 260.0, 600.0);
    return (22.714 - 0.120 * c + 2.281e-4 * c * c - 1.474e-7 * c * c * c) / 1000.0;
}

double salt_conductivity(double T) { return 0.443 + 1.9e-4 * (T - 273.15); }

ReceiverLosses receiver_losses(const ReceiverSpec& spec, double incident_kw, double wall_T, double ambient_T) {
    const CavityGeom g = cavity_geometry(spec);
    const double dT = std::max(0.0, wall_T - ambient_T);
    ReceiverLosses l;
    l.reflection = incident_kw * (1.0 - effective_property(kAbsorptance, g));
    l.radiation = effective_property(kEmittance, g) * kSigma * g.aperture *
                  (sq(sq(wall_T)) - sq(sq(ambient_T))) / 1000.0;
    // Siebers-Kraabel natural convection inside the cavity.
    const double h_conv = 0.81 * dm::pow(dT, 0.426);
    l.convection = h_conv * g.cavity * dT / 1000.0;
    l.conduction = g.cavity * dT / (spec.insul_t / kReceiverInsulK + 1.0 / kReceiverOuterH) / 1000.0;
    return l;
}

ReceiverResult receiver_absorb(const ReceiverSpec& spec, double incident_kw, double inlet_T, double outlet_T,
                               double ambient_T) {
    ReceiverResult res;
    res.wall_T = inlet_T;
    if (incident_kw <= 0.0) return res;
    const double mean_T = 0.5 * (inlet_T + outlet_T);
    const double rise = outlet_T - inlet_T;
    auto absorbed_at = [&](double tw) {
        const ReceiverLosses l = receiver_losses(spec, incident_kw, tw, ambient_T);
        return incident_kw - l.reflection - l.radiation - l.convection - l.conduction;
    };
    // Balance residual: wall temperature implied by the absorbed power minus the guess.
    auto balance = [&](double tw) {
        const double q = std::max(0.0, absorbed_at(tw));
        const double flow = q / (kSaltCp * rise);
        return mean_T + q * 1000.0 / receiver_ua(spec, flow, mean_T) - tw;
    };
    if (absorbed_at(mean_T) <= 0.0) {
        // No net gain: the wall settles where losses match the incident flux.
        double a = ambient_T, b = mean_T;
        for (int i = 0; i < 60; ++i) {
            const double m = 0.5 * (a + b);
            (absorbed_at(m) > 0.0 ? a : b) = m;
        }
        res.wall_T = 0.5 * (a + b);
        return res;
    }
    double lo = mean_T, hi = mean_T + 100.0;
    double g_lo = balance(lo), g_hi = balance(hi);
    int it = 0;
    while (g_hi > 0.0 && it < 100) {
        lo = hi;
        g_lo = g_hi;
        hi = mean_T + 2.0 * (hi - mean_T);
        g_hi = balance(hi);
        ++it;
    }
    // Illinois false position on the bracket [lo, hi].
    int side = 0;
    double tw = lo;
    res.converged = false;
    for (; it < 100; ++it) {
        tw = (lo * g_hi - hi * g_lo) / (g_hi - g_lo);
        const double g = balance(tw);
        if (std::fabs(hi - lo) <= 1e-6 * tw || g == 0.0) {
            res.converged = true;
            break;
        }
        if (g > 0.0) {
            lo = tw;
            g_lo = g;
            if (side == 1) g_hi *= 0.5;
            side = 1;
        } else {
            hi = tw;
            g_hi = g;
            if (side == -1) g_lo *= 0.5;
            side = -1;
        }
    }
    res.iterations = it;
    res.wall_T = tw;
    res.absorbed_kw = std::max(0.0, absorbed_at(tw));
    res.salt_flow = res.absorbed_kw / (kSaltCp * rise);
    return res;
}

double receiver_pressure_drop(const ReceiverSpec& spec, double salt_flow, double mean_T) {
    if (salt_flow <= 0.0) return 0.0;
    const double per_tube = salt_flow * kReceiverPanels / spec.n_tubes;
    const double mu = salt_viscosity(mean_T);
    const double area = 0.25 * kPi * spec.d_in * spec.d_in;
    const double v = per_tube / (kSaltRho * area);
    const double re = kSaltRho * v * spec.d_in / mu;
    const double path = kReceiverPanels * spec.aperture_h;
    const double heads = darcy_friction(re) * path / spec.d_in + kBendLoss * kReceiverPanels;
    return heads * 0.5 * kSaltRho * v * v / 1.0e6;
}

double TankSpec::area() const { return 0.25 * kPi * diameter * diameter; }
double TankSpec::capacity() const { return kSaltRho * area() * height; }

TankLosses tank_losses(const TankSpec& spec, const TankState& state, double ambient_T) {
    TankLosses out;
    out.enclosure_T = state.salt_temp;
    if (state.salt_level <= 0.0) return out;
    const TankCoefficients c = tank_coefficients(spec, ambient_T);
    const double dT = state.salt_temp - ambient_T;
    const double a = spec.area();
    const double level = std::min(state.salt_level, spec.height);
    out.bottom = c.floor_u * a * dT / 1000.0;
    out.wet_wall = c.wall_g * level * dT / 1000.0;

    // Gray-body exchange between the salt surface and the roof/dry-wall
    // enclosure, which in turn loses heat to ambient.
    const double dry_h = spec.height - level;
    const double a_dry = kPi * spec.diameter * dry_h;
    const double a_enc = a + a_dry;
    const double r_rad = (1.0 - kSaltEmittance) / (kSaltEmittance * a) + 1.0 / a +
                         (1.0 - kLinerEmittance) / (kLinerEmittance * a_enc);
    const double g_out = c.ceiling_u * a + c.wall_g * dry_h;
    const double ts4 = sq(sq(state.salt_temp));
    double te = state.salt_temp;
    double q_rad = 0.0;
    if (state.salt_temp > ambient_T) {
        double lo = ambient_T, hi = state.salt_temp;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double f = kSigma * (ts4 - sq(sq(mid))) / r_rad - g_out * (mid - ambient_T);
            if (f > 0.0) lo = mid;
            else hi = mid;
        }
        te = 0.5 * (lo + hi);
        q_rad = kSigma * (ts4 - sq(sq(te))) / r_rad;
    }
    out.enclosure_T = te;
    out.ms_to_ceiling = q_rad * (a / a_enc) / 1000.0;
    out.ms_to_dry = q_rad * (a_dry / a_enc) / 1000.0;
    out.ceiling_external = c.ceiling_u * a * (te - ambient_T) / 1000.0;
    out.dry_external = c.wall_g * dry_h * (te - ambient_T) / 1000.0;
    out.total = out.bottom + out.wet_wall + q_rad / 1000.0;
    return out;
}

double saturation_T(double pressure_mpa) {
    // Clausius-Clapeyron through the normal boiling point.
    return 1.0 / (1.0 / 373.15 - (0.4615 / 2257.0) * dm::log(pressure_mpa / kAtmosphere));
}

double steam_enthalpy_rise(double steam_T, double pressure_mpa) {
    const double h_vapour = 2800.0 - 12.0 * pressure_mpa;
    const double superheat = std::max(0.0, steam_T - saturation_T(pressure_mpa));
    const double h_feed = 4.19 * (kFeedwaterT - 273.15);
    return h_vapour + 2.6 * superheat - h_feed;
}

SteamDemand steam_for_thermal(double thermal_kw, double steam_T, double pressure_mpa) {
    return {thermal_kw / steam_enthalpy_rise(steam_T, pressure_mpa), steam_T, pressure_mpa};
}

ExchangerResult exchanger_required_flow(const ExchangerSpec& spec, double hot_salt_T, const SteamDemand& demand,
                                        double max_salt_flow) {
    ExchangerResult r;
    r.salt_outlet_T = hot_salt_T;
    const double duty = demand.mass_flow * steam_enthalpy_rise(demand.inlet_T, demand.pressure);
    if (duty <= 0.0) return r;
    const double span = hot_salt_T - kFeedwaterT;
    if (hot_salt_T <= demand.inlet_T || span <= 0.0) {
        r.feasible = false;
        return r;
    }
    const double ideal_flow = duty / (kSaltCp * span);
    if (spec.idealized) {
        r.effectiveness = 1.0;
        r.salt_flow = ideal_flow;
        r.salt_outlet_T = kFeedwaterT;
        r.duty_kw = duty;
        r.feasible = ideal_flow <= max_salt_flow;
        if (!r.feasible) {
            r.salt_flow = max_salt_flow;
            r.duty_kw = max_salt_flow * kSaltCp * span;
        }
        return r;
    }
    const ShellSide g = shell_geometry(spec);
    if (!g.ok) {
        r.valid = false;
        r.feasible = false;
        return r;
    }
    const double c_w = duty / (demand.inlet_T - kFeedwaterT);
    auto eval = [&](double m) { return exchanger_at(spec, g, hot_salt_T, m, c_w, demand.mass_flow); };
    double lo = ideal_flow;
    double hi = 2.0 * ideal_flow;
    const double limit = std::min(max_salt_flow, 1.0e6 * ideal_flow);
    while (eval(std::min(hi, limit)).duty < duty) {
        if (hi >= limit) {
            r.feasible = false;
            const ExchangerEval e = eval(limit);
            r.salt_flow = limit;
            r.effectiveness = e.eps;
            r.duty_kw = e.duty;
            r.salt_outlet_T = hot_salt_T - e.duty / (limit * kSaltCp);
            r.shell_dp = e.shell_dp / 1.0e6;
            r.tube_dp = e.tube_dp / 1.0e6;
            return r;
        }
        lo = hi;
        hi *= 2.0;
    }
    hi = std::min(hi, limit);
    while (hi - lo > 1.0e-12 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (eval(mid).duty >= duty) hi = mid;
        else lo = mid;
    }
    const ExchangerEval e = eval(hi);
    r.salt_flow = hi;
    r.effectiveness = e.eps;
    r.duty_kw = duty;
    r.salt_outlet_T = hot_salt_T - duty / (hi * kSaltCp);
    r.shell_dp = e.shell_dp / 1.0e6;
    r.tube_dp = e.tube_dp / 1.0e6;
    return r;
}

double exchanger_capacity(const ExchangerSpec& spec, double hot_salt_T, double steam_T, double pressure_mpa,
                          double max_salt_flow) {
    const double span = hot_salt_T - kFeedwaterT;
    if (hot_salt_T <= steam_T || span <= 0.0 || max_salt_flow <= 0.0) return 0.0;
    const double upper = max_salt_flow * kSaltCp * span;
    if (spec.idealized) return upper;
    const ShellSide g = shell_geometry(spec);
    if (!g.ok) return 0.0;
    // Duty grows with the salt flow, so q is deliverable exactly when the
    // exchanger reaches it at the largest admissible flow.
    const double rise = steam_enthalpy_rise(steam_T, pressure_mpa);
    auto ok = [&](double q) {
        if (q <= 0.0) return true;
        const double water = q / rise;
        const double limit = std::min(max_salt_flow, 1.0e6 * q / (kSaltCp * span));
        return exchanger_at(spec, g, hot_salt_T, limit, q / (steam_T - kFeedwaterT), water).duty >= q;
    };
    double lo = 0.0, hi = upper;
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (ok(mid)) lo = mid;
        else hi = mid;
    }
    return lo;
}

double PlantState::hot_level(const PlantConfig& cfg) const { return hot_mass / (kSaltRho * cfg.hot.area()); }
double PlantState::cold_level(const PlantConfig& cfg) const { return cold_mass / (kSaltRho * cfg.cold.area()); }
double PlantState::hot_energy() const { return hot_mass * kSaltCp * (hot_T - kSaltMelt) / 3600.0; }

PlantState initial_state(const PlantConfig& cfg) {
    PlantState s;
    s.hot_mass = 0.5 * cfg.hot.capacity();
    s.cold_mass = 0.5 * cfg.cold.capacity();
    s.hot_T = cfg.receiver_outlet_T;
    s.cold_T = cfg.heater_setpoint + 10.0;
    return s;
}

PlantState step_cycle(const PlantConfig& cfg, const PlantState& s, double dt, const StepInput& in, StepTrace* trace) {
    PlantState out = s;
    const double cp = kSaltCp;

    // Receiver: the controller sets the salt flow from its forecast; the
    // outlet temperature then follows from what is actually absorbed.
    double m_rcv = 0.0;
    double t_rcv = s.cold_T;
    if (in.forecast_kw > 0.0 && in.field_kw > 0.0) {
        const ReceiverResult plan = receiver_absorb(cfg.receiver, in.forecast_kw, s.cold_T, cfg.receiver_outlet_T, in.ambient_T);
        const ReceiverResult act = receiver_absorb(cfg.receiver, in.field_kw, s.cold_T, cfg.receiver_outlet_T, in.ambient_T);
        if (!plan.converged || !act.converged) out.failed = true;
        out.max_wall_T = std::max(out.max_wall_T, act.wall_T);
        if (plan.salt_flow > 0.0 && act.absorbed_kw > 0.0) {
            m_rcv = plan.salt_flow;
            t_rcv = s.cold_T + act.absorbed_kw / (m_rcv * cp);
        }
    }

    // Steam generator and turbine.
    double m_sg = 0.0;
    double t_sg = s.hot_T;
    double steam_kw = 0.0;
    double electric_kw = 0.0;
    double unmet_kw = 0.0;
    double water_flow = 0.0;
    ExchangerResult ex;
    if (in.demand_kw > 0.0) {
        const power::TurbineRecord& tb = cfg.turbine;
        const double m_avail = std::max(0.0, s.hot_mass - kTankHeel * cfg.hot.capacity()) / dt;
        const double target = std::clamp(in.demand_kw, tb.p_min, tb.p_max);
        const double need = power::thermal_for_electric(tb, target);
        ex = exchanger_required_flow(cfg.exchanger, s.hot_T, steam_for_thermal(need, tb.inlet_T, tb.inlet_P), m_avail);
        if (!ex.valid) out.failed = true;
        power::Dispatch d;
        if (ex.valid && ex.feasible) {
            d = power::dispatch(tb, in.demand_kw, need);
        } else if (ex.valid) {
            const double avail = exchanger_capacity(cfg.exchanger, s.hot_T, tb.inlet_T, tb.inlet_P, m_avail);
            d = power::dispatch(tb, in.demand_kw, avail);
            ex = ExchangerResult{};
            if (d.thermal_draw_kw > 0.0)
                ex = exchanger_required_flow(cfg.exchanger, s.hot_T, steam_for_thermal(d.thermal_draw_kw, tb.inlet_T, tb.inlet_P),
                                             m_avail);
            if (!ex.feasible) {
                d = power::Dispatch{0.0, 0.0, in.demand_kw};
                ex = ExchangerResult{};
            }
        } else {
            d.unmet_kw = in.demand_kw;
        }
        electric_kw = d.electric_kw;
        unmet_kw = d.unmet_kw;
        if (d.thermal_draw_kw > 0.0) {
            m_sg = ex.salt_flow;
            t_sg = ex.salt_outlet_T;
            steam_kw = m_sg * cp * (s.hot_T - t_sg);
            water_flow = d.thermal_draw_kw / steam_enthalpy_rise(tb.inlet_T, tb.inlet_P);
        }
    }

    // Receiver flow limited by the cold inventory and the hot tank's free volume.
    const double room = (cfg.hot.capacity() - s.hot_mass) / dt + m_sg;
    const double cold_avail = std::max(0.0, s.cold_mass - kTankHeel * cfg.cold.capacity()) / dt;
    m_rcv = std::max(0.0, std::min({m_rcv, cold_avail, room}));
    const double absorbed_kw = m_rcv * cp * (t_rcv - s.cold_T);

    const TankLosses lh = tank_losses(cfg.hot, {s.hot_level(cfg), s.hot_T}, in.ambient_T);
    const TankLosses lc = tank_losses(cfg.cold, {s.cold_level(cfg), s.cold_T}, in.ambient_T);

    const double into_hot = m_rcv * dt;
    const double out_hot = m_sg * dt;
    const double transfer = into_hot - out_hot;
    out.hot_mass = s.hot_mass + transfer;
    out.cold_mass = s.cold_mass - transfer;
    // A nearly empty tank cannot lose more than it holds above ambient.
    const double mix_hot = s.hot_mass * cp * s.hot_T + into_hot * cp * t_rcv - out_hot * cp * s.hot_T;
    const double mix_cold = s.cold_mass * cp * s.cold_T + out_hot * cp * t_sg - into_hot * cp * s.cold_T;
    const double loss_hot = std::min(lh.total * dt, std::max(0.0, mix_hot - out.hot_mass * cp * in.ambient_T));
    const double loss_cold = std::min(lc.total * dt, std::max(0.0, mix_cold - out.cold_mass * cp * in.ambient_T));
    const double e_hot = mix_hot - loss_hot;
    const double e_cold = mix_cold - loss_cold;
    out.hot_T = out.hot_mass > 0.0 ? e_hot / (out.hot_mass * cp) : s.hot_T;
    out.cold_T = out.cold_mass > 0.0 ? e_cold / (out.cold_mass * cp) : s.cold_T;

    // Anti-freeze heaters with a finite rating per unit wall area.
    double heater_kj = 0.0;
    auto heat = [&](const TankSpec& spec, double mass, double& temp) {
        if (mass <= 0.0 || temp >= cfg.heater_setpoint) return;
        const double rating = cfg.heater_flux * kPi * spec.diameter * spec.height;
        const double q = std::min(rating * dt, mass * cp * (cfg.heater_setpoint - temp));
        temp += q / (mass * cp);
        heater_kj += q;
    };
    heat(cfg.hot, out.hot_mass, out.hot_T);
    heat(cfg.cold, out.cold_mass, out.cold_T);

    const double e_before = s.hot_mass * cp * s.hot_T + s.cold_mass * cp * s.cold_T;
    const double e_after = out.hot_mass * cp * out.hot_T + out.cold_mass * cp * out.cold_T;
    const double in_kj = absorbed_kw * dt;
    const double steam_kj = out_hot * cp * (s.hot_T - t_sg);
    const double loss_kj = loss_hot + loss_cold;
    const double residual = in_kj - steam_kj - loss_kj + heater_kj - (e_after - e_before);
    const double scale = std::fabs(in_kj) + std::fabs(steam_kj) + std::fabs(loss_kj) + std::fabs(heater_kj) +
                         std::fabs(e_after - e_before);
    out.energy_residual = scale > 0.0 ? std::fabs(residual) / scale : 0.0;

    const double h = dt / 3600.0;
    out.time = s.time + dt;
    out.absorbed += absorbed_kw * h;
    out.steam += steam_kw * h;
    out.electric += electric_kw * h;
    out.unmet += unmet_kw * h;
    out.losses += loss_kj / 3600.0;
    out.heater += heater_kj / 3600.0;
    if (in.demand_kw <= 0.0 || unmet_kw <= 0.0) out.met_seconds += dt;

    const double mean_rcv_T = 0.5 * (s.cold_T + cfg.receiver_outlet_T);
    if (m_rcv > 0.0) {
        const double dp = receiver_pressure_drop(cfg.receiver, m_rcv, mean_rcv_T) * 1.0e6 + kSaltRho * kGravity * cfg.tower_h;
        out.pump_receiver += m_rcv * dp / kSaltRho / kPumpEfficiency / 1000.0 * h;
    }
    if (m_sg > 0.0) {
        out.pump_shell += m_sg * ex.shell_dp * 1.0e6 / kSaltRho / kPumpEfficiency / 1000.0 * h;
        out.pump_tubes += water_flow * ex.tube_dp * 1.0e6 / kWaterRho / kPumpEfficiency / 1000.0 * h;
        out.min_sg_out_T = std::min(out.min_sg_out_T, t_sg);
        out.max_shell_dp = std::max(out.max_shell_dp, ex.shell_dp);
        out.max_tube_dp = std::max(out.max_tube_dp, ex.tube_dp);
    }
    out.max_receiver_flow = std::max(out.max_receiver_flow, m_rcv);
    out.min_hot_T = std::min(out.min_hot_T, out.hot_T);
    out.min_cold_T = std::min(out.min_cold_T, out.cold_T);

    if (trace) {
        trace->absorbed_kw = absorbed_kw;
        trace->steam_kw = steam_kw;
        trace->electric_kw = electric_kw;
        trace->receiver_flow = m_rcv;
        trace->sg_flow = m_sg;
        trace->loss_kw = loss_kj / dt;
        trace->heater_kw = heater_kj / dt;
        trace->residual_kj = residual;
        trace->scale_kj = scale;
    }
    return out;
}

}  // namespace solar::thermal
