#include "solar/powerblock.hpp"

#include "solar/data.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>

namespace solar::power {

const std::vector<TurbineRecord>& turbine_catalogue() {
    static const std::vector<TurbineRecord> rows = [] {
        std::vector<TurbineRecord> out;
        for (const auto& row : data::parse_csv(data::file("turbines.csv"))) {
            TurbineRecord r;
            r.id = static_cast<int>(row.at(0));
            r.p_max = row.at(1);
            r.p_min = row.at(2);
            r.inlet_T = row.at(3);
            r.inlet_P = row.at(4);
            r.cost = row.at(5);
            out.push_back(r);
        }
        return out;
    }();
    return rows;
}

const TurbineRecord& turbine_lookup(int st) {
    const auto& rows = turbine_catalogue();
    if (st < 1 || st > static_cast<int>(rows.size())) throw std::out_of_range("turbine type " + std::to_string(st));
    return rows[static_cast<std::size_t>(st - 1)];
}

double max_efficiency(const TurbineRecord& rec) {
    return 0.08 + 0.0004 * (rec.inlet_T - 273.15) + 0.004 * rec.inlet_P;
}

double turbine_efficiency(const TurbineRecord& rec, double usage_ratio) {
    const double u = std::clamp(usage_ratio, 0.0, 1.0);
    const double gap = 1.0 - u;
    return max_efficiency(rec) * (1.0 - 0.4 * gap * gap);
}

double thermal_for_electric(const TurbineRecord& rec, double electric_kw) {
    if (electric_kw <= 0.0) return 0.0;
    return electric_kw / (turbine_efficiency(rec, electric_kw / rec.p_max) * kMechToElectric);
}

Dispatch dispatch(const TurbineRecord& rec, double demand_kw, double available_thermal_kw) {
    Dispatch d;
    if (demand_kw <= 0.0) return d;
    const double target = std::clamp(demand_kw, rec.p_min, rec.p_max);
    const double need = thermal_for_electric(rec, target);
    if (available_thermal_kw >= need) {
        d.electric_kw = target;
        d.thermal_draw_kw = need;
    } else if (available_thermal_kw >= thermal_for_electric(rec, rec.p_min)) {
        // thermal_for_electric is increasing, so bisect on the electric output.
        double lo = rec.p_min, hi = target;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (thermal_for_electric(rec, mid) <= available_thermal_kw) lo = mid;
            else hi = mid;
        }
        d.electric_kw = lo;
        d.thermal_draw_kw = thermal_for_electric(rec, lo);
    }
    d.unmet_kw = std::max(0.0, demand_kw - d.electric_kw);
    return d;
}

}  // namespace solar::power
