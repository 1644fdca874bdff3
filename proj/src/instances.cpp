#include "solar/instances.hpp"

#include "solar/data.hpp"
#include "solar/detmath.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace solar {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

VariableSpec var(const char* sym, VarKind kind, double lo, double hi, const char* unit, const char* desc) {
    VariableSpec v;
    v.kind = kind;
    v.lower = lo;
    v.upper = hi;
    v.unit = unit;
    v.symbol = sym;
    v.description = desc;
    return v;
}

constexpr VarKind C = VarKind::Continuous;
constexpr VarKind I = VarKind::Integer;
constexpr VarKind K = VarKind::Categorical;

std::vector<VariableSpec> field_vars() {
    return {
        var("L_hf", C, 1, 40, "m", "heliostat length"),
        var("W_hf", C, 1, 40, "m", "heliostat width"),
        var("H_twr", C, 20, 250, "m", "tower height"),
        var("H_rcv", C, 1, 30, "m", "receiver aperture height"),
        var("W_rcv", C, 1, 30, "m", "receiver aperture width"),
        var("N_hf", I, 1, kInf, "-", "number of heliostats"),
        var("theta_hf", C, 1, 89, "deg", "field angular half-width"),
        var("R_hf_min", C, 0, 20, "x H_twr", "minimum distance from tower"),
        var("R_hf_max", C, 1, 20, "x H_twr", "maximum distance from tower"),
    };
}

VariableSpec t_out() { return var("T_rcv_out", C, 793, 995, "K", "receiver outlet temperature"); }
VariableSpec n_rcv(double hi) { return var("N_rcv_tub", I, 1, hi, "-", "receiver number of tubes"); }
VariableSpec t_rcv(double lo, double hi) { return var("t_rcv", C, lo, hi, "m", "receiver insulation thickness"); }
VariableSpec d_rcv() { return var("d_rcv", C, 0.005, 0.1, "m", "receiver tube inner diameter"); }
VariableSpec dd_rcv(double lo) { return var("D_rcv", C, lo, 0.1, "m", "receiver tube outer diameter"); }

std::vector<VariableSpec> storage_vars(double h_lo, double h_hi, double d_lo, double t_hi) {
    return {
        var("H_hot", C, h_lo, h_hi, "m", "hot storage height"),
        var("d_hot", C, d_lo, 30, "m", "hot storage diameter"),
        var("t_hot", C, 0.01, t_hi, "m", "hot storage insulation thickness"),
        var("t_cold", C, 0.01, t_hi, "m", "cold storage insulation thickness"),
    };
}

VariableSpec t_cold_min() { return var("T_cold_min", C, 495, 650, "K", "minimum cold storage temperature"); }
VariableSpec turbine() { return var("ST", K, 1, 8, "-", "type of turbine"); }

std::vector<VariableSpec> exchanger_vars(double st_lo) {
    return {
        var("S_t", C, st_lo, 0.2, "m", "steam generator tube spacing"),
        var("L_sg", C, 0.5, 10, "m", "steam generator tube length"),
        var("d_sg", C, 0.005, 0.1, "m", "steam generator tube inner diameter"),
        var("D_sg", C, 0.006, 0.1, "m", "steam generator tube outer diameter"),
        var("H_sg_baf", C, 0.15, 0.4, "ratio", "baffle cut"),
        var("N_sg_baf", I, 2, kInf, "-", "number of baffles"),
        var("N_sg_tub", I, 1, kInf, "-", "steam generator number of tubes"),
        var("N_sg_sh_pass", I, 1, 10, "-", "number of shell passes"),
        var("N_sg_tub_pass", I, 1, 9, "-", "number of tube passes"),
    };
}

template <class... Parts>
std::vector<VariableSpec> concat(Parts&&... parts) {
    std::vector<VariableSpec> out;
    (out.insert(out.end(), parts.begin(), parts.end()), ...);
    for (std::size_t i = 0; i < out.size(); ++i) out[i].index = static_cast<int>(i) + 1;
    return out;
}

std::vector<VariableSpec> one(VariableSpec v) { return {std::move(v)}; }

constexpr OutputClass AP = OutputClass::Apriori;
constexpr OutputClass DET = OutputClass::Deterministic;
constexpr OutputClass STO = OutputClass::Stochastic;

struct Out {
    OutputClass cls;
    bool linear;
    const char* description;
};

std::vector<OutputSpec> outputs(int p, std::initializer_list<Out> list) {
    std::vector<OutputSpec> out;
    int k = 0;
    for (const Out& o : list) {
        OutputSpec s;
        s.name = k < p ? "f" + std::to_string(k + 1) : "c" + std::to_string(k - p + 1);
        s.cls = o.cls;
        s.linear = o.linear;
        s.description = o.description;
        out.push_back(s);
        ++k;
    }
    return out;
}

DesignPoint load_x0(int id, std::size_t n) {
    std::istringstream in{std::string(data::file("x0/solar" + std::to_string(id) + ".txt"))};
    DesignPoint x;
    std::string tok;
    while (in >> tok) {
        if (tok.front() == '#') {
            std::getline(in, tok);
            continue;
        }
        x.push_back(parse_value(tok));
    }
    if (x.size() != n) throw std::runtime_error("x0 for instance " + std::to_string(id) + " has wrong length");
    return x;
}

std::vector<InstanceSpec> build() {
    std::vector<InstanceSpec> all(10);
    const Out area{AP, false, "field surface below the limit (ha)"};
    const Out tower{AP, true, "tower at least twice the heliostat length"};
    const Out order{AP, true, "minimum distance below maximum distance"};
    const Out diam{AP, true, "receiver tube inner diameter below outer diameter"};
    const Out fit_tubes{AP, false, "receiver tubes fit inside the receiver"};
    const Out sg_lo{AP, true, "steam generator inner below outer diameter"};
    const Out sg_hi{AP, true, "steam generator outer diameter below tube spacing"};
    const Out fit{DET, false, "requested heliostats fit in the field"};
    const Out budget{DET, false, "plant cost below the budget ($)"};
    const Out outlet{DET, false, "receiver outlet hotter than the turbine inlet (K)"};
    const Out sg_pressure{DET, false, "steam generator tube stress below yield (MPa)"};

    auto out_cls = [](Out o, OutputClass c) {
        o.cls = c;
        return o;
    };
    auto comply = [&](OutputClass c) { return out_cls({c, false, "demand met (unmet minus reserve, kWh)"}, c); };
    auto rcv_pressure = [&](OutputClass c) { return out_cls({c, false, "receiver tube stress below yield (MPa)"}, c); };
    auto hot_melt = [&](OutputClass c) { return out_cls({c, false, "hot storage above the melting point (K)"}, c); };
    auto cold_melt = [&](OutputClass c) { return out_cls({c, false, "cold storage above the melting point (K)"}, c); };
    auto sg_melt = [&](OutputClass c) { return out_cls({c, false, "steam generator outlet above the melting point (K)"}, c); };
    auto parasitic = [&](OutputClass c) { return out_cls({c, false, "parasitic losses below the allowed ratio (kWh)"}, c); };
    auto storage_back = [&](OutputClass c) { return out_cls({c, false, "hot storage energy back to its initial value (kWh)"}, c); };
    auto min_energy = [&](OutputClass c) { return out_cls({c, false, "minimal energy production reached (kWh)"}, c); };

    {
        InstanceSpec& s = all[0];
        s.summary = "maximize the energy collected by the receiver in 24 hours";
        s.variables = concat(field_vars());
        s.p = 1;
        s.outputs = outputs(1, {{STO, false, "minus the energy reaching the receiver (kWh)"}, budget, area, tower, order, fit});
        s.budget = 50.0e6;
        s.area_limit = 195.0;
    }
    {
        InstanceSpec& s = all[1];
        s.summary = "minimize the heliostat field surface while meeting a demand peaking at 20 MW";
        s.variables = concat(field_vars(), one(t_out()), one(n_rcv(9424)), one(t_rcv(0.01, 5)), one(d_rcv()), one(dd_rcv(0.005)));
        s.p = 1;
        s.outputs = outputs(1, {{AP, false, "field surface (m2)"}, area, comply(STO), budget, tower, order, fit, rcv_pressure(STO),
                                hot_melt(STO), cold_melt(STO), fit_tubes, diam, outlet});
        s.multifidelity = s.accepts_fidelity = true;
        s.budget = 300.0e6;
        s.area_limit = 400.0;
        s.demand_file = "demand/solar2.csv";
    }
    {
        InstanceSpec& s = all[2];
        s.summary = "minimize the investment cost of a plant delivering 10 MW from noon to 6 pm";
        s.variables = concat(field_vars(), one(t_out()), storage_vars(1, 50, 1, 5), one(t_cold_min()), one(n_rcv(9424)),
                             one(t_rcv(0.01, 5)), one(d_rcv()), one(dd_rcv(0.005)), one(turbine()));
        s.p = 1;
        s.outputs = outputs(1, {{DET, false, "total investment cost ($)"}, area, comply(STO), tower, order, fit, rcv_pressure(STO),
                                hot_melt(STO), cold_melt(STO), sg_melt(DET), diam, fit_tubes, outlet, storage_back(STO)});
        s.multifidelity = s.accepts_fidelity = true;
        s.area_limit = 80.0;
        s.demand_file = "demand/solar3.csv";
    }
    {
        InstanceSpec& s = all[3];
        s.summary = "minimize the investment cost of a plant following a 72 hour demand peaking at 25 MW";
        s.variables = concat(field_vars(), one(t_out()), storage_vars(1, 50, 1, 5), one(t_cold_min()), one(n_rcv(7853)),
                             one(t_rcv(0.01, 5)), one(d_rcv()), one(dd_rcv(0.006)), exchanger_vars(0.007), one(turbine()));
        s.p = 1;
        s.outputs = outputs(1, {{DET, false, "total investment cost ($)"}, area, comply(STO), tower, order, fit, rcv_pressure(STO),
                                hot_melt(STO), cold_melt(STO), sg_melt(STO), diam, fit_tubes, outlet, parasitic(STO), sg_lo, sg_hi,
                                sg_pressure});
        s.multifidelity = s.accepts_fidelity = true;
        s.window_hours = 72.0;
        s.area_limit = 200.0;
        s.parasitic_ratio = 0.18;
        s.demand_file = "demand/solar4.csv";
    }
    {
        InstanceSpec& s = all[4];
        s.summary = "maximize the time a fixed field meets a 12 MW demand over 30 days";
        s.variables = concat(one(t_out()), storage_vars(1, 30, 1, 2), one(t_cold_min()), one(n_rcv(1884)), one(t_rcv(0.1, 2)),
                             one(d_rcv()), one(dd_rcv(0.005)), exchanger_vars(0.006), one(turbine()));
        s.p = 1;
        s.outputs = outputs(1, {{DET, false, "minus the days with demand fully met"}, budget, rcv_pressure(DET), hot_melt(DET),
                                cold_melt(DET), sg_melt(DET), diam, fit_tubes, outlet, parasitic(DET), sg_lo, sg_hi, sg_pressure});
        s.window_hours = 720.0;
        s.budget = 100.0e6;
        s.parasitic_ratio = 0.18;
        s.demand_file = "demand/solar5.csv";
    }
    {
        InstanceSpec& s = all[5];
        s.summary = "minimize the storage cost of a fixed plant sustaining 100 MW for 24 hours";
        s.variables = concat(one(t_out()), storage_vars(2, 50, 2, 5));
        s.p = 1;
        s.outputs = outputs(1, {{DET, false, "hot plus cold storage cost ($)"}, comply(DET), rcv_pressure(DET), hot_melt(DET),
                                cold_melt(DET), outlet, storage_back(DET)});
        s.demand_file = "demand/solar6.csv";
    }
    {
        InstanceSpec& s = all[6];
        s.summary = "maximize the efficiency of the receiver of a fixed field";
        VariableSpec h = var("H_rcv", C, 1, 30, "m", "receiver aperture height");
        VariableSpec w = var("W_rcv", C, 1, 30, "m", "receiver aperture width");
        s.variables = concat(one(h), one(w), one(t_out()), one(n_rcv(8567)), one(t_rcv(0.01, 5)), one(d_rcv()), one(dd_rcv(0.0055)));
        s.p = 1;
        s.outputs = outputs(1, {{STO, false, "minus the receiver efficiency (%)"}, budget, rcv_pressure(STO), diam,
                                {DET, false, "design-point absorbed power reached (kW)"}, fit_tubes, parasitic(STO)});
        s.multifidelity = s.accepts_fidelity = true;
        s.budget = 45.0e6;
        s.parasitic_ratio = 0.03;
    }
    {
        InstanceSpec& s = all[7];
        s.summary = "maximize the energy absorbed by the receiver and minimize the field, tower and receiver cost";
        s.variables = concat(field_vars(), one(n_rcv(7853)), one(t_rcv(0.01, 5)), one(d_rcv()), one(dd_rcv(0.006)));
        s.p = 2;
        s.outputs = outputs(2, {{STO, false, "minus the energy absorbed by the salt (kWh)"},
                                {DET, false, "field, tower and receiver cost ($)"}, area, tower, order, fit, rcv_pressure(STO),
                                diam, fit_tubes, min_energy(STO), parasitic(STO)});
        s.multifidelity = s.accepts_fidelity = true;
        s.area_limit = 400.0;
        s.parasitic_ratio = 0.08;
    }
    {
        InstanceSpec& s = all[8];
        s.summary = "maximize the electric energy and minimize the parasitic losses of a full plant";
        s.variables = concat(field_vars(), one(t_out()), storage_vars(1, 50, 1, 5), one(t_cold_min()), one(n_rcv(7853)),
                             one(t_rcv(0.01, 5)), one(d_rcv()), one(dd_rcv(0.006)), exchanger_vars(0.007), one(turbine()));
        s.p = 2;
        s.outputs = outputs(2, {{STO, false, "minus the electric energy produced (kWh)"}, {STO, false, "parasitic losses (kWh)"},
                                budget, min_energy(STO), area, tower, order, fit, rcv_pressure(STO), hot_melt(STO),
                                cold_melt(STO), sg_melt(STO), diam, fit_tubes, outlet, parasitic(STO), sg_lo, sg_hi,
                                sg_pressure});
        s.multifidelity = s.accepts_fidelity = true;
        s.budget = 1.2e9;
        s.area_limit = 500.0;
        s.parasitic_ratio = 0.20;
    }
    {
        InstanceSpec& s = all[9];
        s.summary = "storage cost of SOLAR6 with its constraints folded into a penalty";
        s.variables = concat(one(t_out()), storage_vars(2, 50, 2, 5));
        s.p = 1;
        s.outputs = outputs(1, {{DET, false, "storage cost plus weighted squared violations"}});
        s.accepts_fidelity = true;
        s.demand_file = "demand/solar6.csv";
    }
    for (int i = 0; i < 10; ++i) {
        InstanceSpec& s = all[static_cast<std::size_t>(i)];
        s.id = i + 1;
        s.name = "SOLAR" + std::to_string(i + 1) + ".1";
        s.n = static_cast<int>(s.variables.size());
        s.m = static_cast<int>(s.outputs.size()) - s.p;
        s.x0 = load_x0(s.id, s.variables.size());
    }
    return all;
}

double x_(const DesignPoint& x, int i) { return x[static_cast<std::size_t>(i - 1)]; }

enum class Expr { Area, Tower, Order, Less, TubesFit, Surface };

struct Apriori {
    int pos;  // flat output index, 0-based
    Expr expr;
    int i = 0, j = 0;
    int a_index = 0;  // tubes fit: aperture width variable, 0 when constant
    double a = 0.0;
};

const std::vector<Apriori>& apriori_table(int id) {
    static const std::array<std::vector<Apriori>, 10> table = [] {
        std::array<std::vector<Apriori>, 10> t;
        // Flat positions are p + c - 1 for constraint c.
        t[0] = {{2, Expr::Area, 0, 0, 0, 195}, {3, Expr::Tower}, {4, Expr::Order}};
        t[1] = {{0, Expr::Surface},         {1, Expr::Area, 0, 0, 0, 400}, {4, Expr::Tower}, {5, Expr::Order},
                {10, Expr::TubesFit, 11, 14, 5}, {11, Expr::Less, 13, 14}};
        t[2] = {{1, Expr::Area, 0, 0, 0, 80}, {3, Expr::Tower}, {4, Expr::Order}, {10, Expr::Less, 18, 19},
                {11, Expr::TubesFit, 16, 19, 5}};
        t[3] = {{1, Expr::Area, 0, 0, 0, 200}, {3, Expr::Tower}, {4, Expr::Order}, {10, Expr::Less, 18, 19},
                {11, Expr::TubesFit, 16, 19, 5}, {14, Expr::Less, 22, 23}, {15, Expr::Less, 23, 20}};
        t[4] = {{6, Expr::Less, 9, 10}, {7, Expr::TubesFit, 7, 10, 0, 6}, {10, Expr::Less, 13, 14}, {11, Expr::Less, 14, 11}};
        t[6] = {{3, Expr::Less, 6, 7}, {5, Expr::TubesFit, 4, 7, 2}};
        t[7] = {{2, Expr::Area, 0, 0, 0, 400}, {3, Expr::Tower}, {4, Expr::Order}, {7, Expr::Less, 12, 13},
                {8, Expr::TubesFit, 10, 13, 5}};
        t[8] = {{4, Expr::Area, 0, 0, 0, 500}, {5, Expr::Tower}, {6, Expr::Order}, {12, Expr::Less, 18, 19},
                {13, Expr::TubesFit, 16, 19, 5}, {16, Expr::Less, 22, 23}, {17, Expr::Less, 23, 20}};
        return t;
    }();
    return table[static_cast<std::size_t>(id - 1)];
}

}  // namespace

int InstanceSpec::count_kind(VarKind k) const {
    int c = 0;
    for (const auto& v : variables) c += v.kind == k;
    return c;
}

int InstanceSpec::count_class(OutputClass cls) const {
    int c = 0;
    for (const auto& o : outputs) c += o.cls == cls;
    return c;
}

int InstanceSpec::count_linear() const {
    int c = 0;
    for (const auto& o : outputs) c += o.cls == OutputClass::Apriori && o.linear;
    return c;
}

const InstanceSpec& instance_spec(int id) {
    static const std::vector<InstanceSpec> all = build();
    if (id < 1 || id > 10) throw UsageError("instance id must be in 1..10, got " + std::to_string(id));
    return all[static_cast<std::size_t>(id - 1)];
}

double field_surface(double tower_h, double angular_width, double r_min, double r_max) {
    return tower_h * tower_h * (r_max * r_max - r_min * r_min) * angular_width * dm::kPi / 180.0;
}

AprioriResult apriori_eval(int id, const DesignPoint& x) {
    const InstanceSpec& spec = instance_spec(id);
    if (static_cast<int>(x.size()) != spec.n)
        throw UsageError(spec.name + " expects " + std::to_string(spec.n) + " values, got " + std::to_string(x.size()));
    AprioriResult r;
    r.y = failed_outputs(spec.p, spec.m);
    for (const Apriori& a : apriori_table(id)) {
        double v = 0.0;
        switch (a.expr) {
            case Expr::Surface: v = field_surface(x_(x, 3), x_(x, 7), x_(x, 8), x_(x, 9)); break;
            case Expr::Area: v = field_surface(x_(x, 3), x_(x, 7), x_(x, 8), x_(x, 9)) / 1.0e4 - a.a; break;
            case Expr::Tower: v = 2.0 * x_(x, 1) - x_(x, 3); break;
            case Expr::Order: v = x_(x, 8) - x_(x, 9); break;
            case Expr::Less: v = x_(x, a.i) - x_(x, a.j); break;
            case Expr::TubesFit: {
                const double width = a.a_index > 0 ? x_(x, a.a_index) : a.a;
                v = x_(x, a.i) * x_(x, a.j) - width * dm::kPi / 2.0;
                break;
            }
        }
        r.y.at(static_cast<std::size_t>(a.pos)) = v;
        if (a.expr != Expr::Surface && v > 0.0) r.satisfied = false;
    }
    return r;
}

int non_integer_index(const InstanceSpec& spec, const DesignPoint& x) {
    for (std::size_t i = 0; i < x.size() && i < spec.variables.size(); ++i) {
        if (spec.variables[i].kind == VarKind::Continuous) continue;
        if (!std::isfinite(x[i]) || std::floor(x[i]) != x[i]) return static_cast<int>(i);
    }
    return -1;
}

double penalty_objective(const OutputVector& y6) {
    const double h1 = y6.objectives.at(0);
    if (is_fail(h1)) return kFail;
    double g[6];
    for (int i = 0; i < 6; ++i) {
        g[i] = violation(y6.constraints.at(static_cast<std::size_t>(i)));
        if (is_fail(g[i])) return kFail;
    }
    const double g2 = 2.0e-6 * g[1];
    return h1 / 1.0e6 + (g[0] * g[0] + g2 * g2 + g[2] * g[2] + g[3] * g[3] + g[4] * g[4] + g[5] * g[5]) / 2.0;
}

}  // namespace solar
