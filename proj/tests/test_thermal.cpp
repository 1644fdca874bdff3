#include "doctest.h"

#include "solar/powerblock.hpp"
#include "solar/thermal_loop.hpp"

#include <stdexcept>

using namespace solar;
using namespace solar::thermal;

namespace {

PlantConfig small_plant() {
    PlantConfig c;
    c.receiver = ReceiverSpec{10.0, 10.0, 800.0, 0.030, 0.035, 0.4};
    c.hot = TankSpec{0.3, 12.0, 15.0};
    c.cold = TankSpec{0.3, 14.4, 15.0};
    c.exchanger.idealized = true;
    c.turbine = power::turbine_lookup(3);
    c.tower_h = 150.0;
    c.receiver_outlet_T = 850.0;
    c.heater_setpoint = 530.0;
    return c;
}

ExchangerSpec real_exchanger() {
    ExchangerSpec e;
    e.tube_spacing = 0.03;
    e.tube_len = 6.0;
    e.d_in = 0.015;
    e.d_out = 0.02;
    e.baffle_cut = 0.25;
    e.n_baffles = 10;
    e.n_tubes = 600;
    e.n_shell_passes = 2;
    e.n_tube_passes = 2;
    return e;
}

}  // namespace

TEST_CASE("receiver") {
    const ReceiverSpec r{10.0, 10.0, 800.0, 0.030, 0.035, 0.4};
    SUBCASE("no incident power means no flow") {
        const ReceiverResult res = receiver_absorb(r, 0.0, 560.0, 850.0);
        CHECK(res.absorbed_kw == 0.0);
        CHECK(res.salt_flow == 0.0);
    }
    SUBCASE("absorbed stays below incident") {
        for (double q : {10000.0, 40000.0, 80000.0}) {
            const ReceiverResult res = receiver_absorb(r, q, 560.0, 850.0);
            CHECK(res.converged);
            CHECK(res.absorbed_kw > 0.0);
            CHECK(res.absorbed_kw < q);
            CHECK(res.salt_flow == doctest::Approx(res.absorbed_kw / (kSaltCp * 290.0)));
        }
    }
    SUBCASE("thicker insulation conducts less") {
        ReceiverSpec thick = r;
        thick.insul_t = 0.8;
        CHECK(receiver_losses(thick, 20000.0, 800.0, 293.15).conduction <
              receiver_losses(r, 20000.0, 800.0, 293.15).conduction);
    }
}

TEST_CASE("tank losses") {
    const TankSpec t{0.3, 12.0, 15.0};
    SUBCASE("an empty tank has no wetted wall") {
        CHECK(tank_losses(t, {0.0, 800.0}, 293.15).wet_wall == 0.0);
    }
    SUBCASE("more insulation loses less") {
        double prev = tank_losses(t, {6.0, 800.0}, 293.15).total;
        for (double ins = 0.4; ins <= 2.0; ins += 0.2) {
            const double now = tank_losses({ins, 12.0, 15.0}, {6.0, 800.0}, 293.15).total;
            CHECK(now < prev);
            prev = now;
        }
    }
    SUBCASE("conduction scales with the temperature difference") {
        const TankLosses a = tank_losses(t, {6.0, 293.15 + 200.0}, 293.15);
        const TankLosses b = tank_losses(t, {6.0, 293.15 + 400.0}, 293.15);
        CHECK(b.bottom / a.bottom == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(b.wet_wall / a.wet_wall == doctest::Approx(2.0).epsilon(1e-9));
    }
}

TEST_CASE("steam generator") {
    const SteamDemand d = steam_for_thermal(20000.0, 783.15, 9.5);
    SUBCASE("idealized exchanger has no pressure drop and perfect effectiveness") {
        ExchangerSpec e;
        e.idealized = true;
        const ExchangerResult r = exchanger_required_flow(e, 850.0, d);
        CHECK(r.shell_dp == 0.0);
        CHECK(r.tube_dp == 0.0);
        CHECK(r.effectiveness == 1.0);
        CHECK(r.salt_flow == doctest::Approx(20000.0 / (kSaltCp * (850.0 - kFeedwaterT))));
    }
    SUBCASE("hotter salt needs less flow") {
        const ExchangerSpec e = real_exchanger();
        double prev = exchanger_required_flow(e, 820.0, d).salt_flow;
        for (double T = 840.0; T <= 960.0; T += 20.0) {
            const ExchangerResult r = exchanger_required_flow(e, T, d);
            REQUIRE(r.feasible);
            CHECK(r.salt_flow < prev);
            CHECK(r.effectiveness > 0.0);
            CHECK(r.effectiveness <= 1.0);
            prev = r.salt_flow;
        }
    }
    SUBCASE("no demand, no flow") {
        const ExchangerResult r = exchanger_required_flow(real_exchanger(), 850.0, {});
        CHECK(r.salt_flow == 0.0);
        CHECK(r.shell_dp == 0.0);
        CHECK(r.tube_dp == 0.0);
    }
    SUBCASE("capacity covers any duty the flow search accepts") {
        const ExchangerSpec e = real_exchanger();
        const double cap = exchanger_capacity(e, 850.0, 783.15, 9.5, 200.0);
        CHECK(cap > 0.0);
        const ExchangerResult r = exchanger_required_flow(e, 850.0, steam_for_thermal(0.99 * cap, 783.15, 9.5), 200.0);
        CHECK(r.feasible);
    }
}

TEST_CASE("storage cycle") {
    const PlantConfig cfg = small_plant();
    const PlantState s0 = initial_state(cfg);
    CHECK(s0.hot_mass == doctest::Approx(0.5 * cfg.hot.capacity()));
    CHECK(s0.hot_T == cfg.receiver_outlet_T);

    SUBCASE("idle plant keeps its levels and mass") {
        StepInput in;
        const PlantState s1 = step_cycle(cfg, s0, 600.0, in);
        CHECK(s1.hot_mass == s0.hot_mass);
        CHECK(s1.cold_mass == s0.cold_mass);
        CHECK(s1.hot_T < s0.hot_T);
    }
    SUBCASE("a day without demand cools the hot tank every step") {
        PlantState s = s0;
        StepInput in;
        for (int k = 0; k < 144; ++k) {
            const PlantState next = step_cycle(cfg, s, 600.0, in);
            CHECK(next.hot_T < s.hot_T);
            s = next;
        }
    }
    SUBCASE("a sunny, loaded day conserves mass and energy") {
        PlantState s = s0;
        const double m0 = s.total_mass();
        for (int k = 0; k < 144; ++k) {
            StepInput in;
            const double hour = (k + 0.5) / 6.0;
            in.field_kw = hour > 6.0 && hour < 18.0 ? 60000.0 : 0.0;
            in.forecast_kw = in.field_kw;
            in.demand_kw = hour > 8.0 && hour < 22.0 ? 15000.0 : 0.0;
            StepTrace tr;
            s = step_cycle(cfg, s, 600.0, in, &tr);
            CHECK_FALSE(s.failed);
            CHECK(s.energy_residual < 1e-6);
            CHECK(std::abs(s.total_mass() - m0) <= 1e-9 * m0);
            CHECK(tr.absorbed_kw <= in.field_kw);
        }
        CHECK(s.electric > 0.0);
        CHECK(s.absorbed > 0.0);
    }
}

TEST_CASE("turbine catalogue") {
    const auto& cat = power::turbine_catalogue();
    REQUIRE(cat.size() == 8);
    CHECK(power::turbine_lookup(1).p_max == 5000.0);
    CHECK(power::turbine_lookup(1).cost == 4349000.0);
    CHECK_THROWS_AS(power::turbine_lookup(9), std::out_of_range);
    for (std::size_t i = 1; i < cat.size(); ++i) CHECK(cat[i].p_max > cat[i - 1].p_max);
    CHECK(power::turbine_lookup(8).p_max == cat.back().p_max);
}

TEST_CASE("turbine efficiency") {
    for (const power::TurbineRecord& rec : power::turbine_catalogue()) {
        CHECK(power::turbine_efficiency(rec, 1.0) == power::max_efficiency(rec));
        CHECK(power::turbine_efficiency(rec, 0.3) < power::turbine_efficiency(rec, 1.0));
        for (double u = 0.05; u <= 1.0; u += 0.05) {
            const double eta = power::turbine_efficiency(rec, u);
            CHECK(eta > 0.0);
            CHECK(eta < 0.55);
        }
    }
}

TEST_CASE("dispatch") {
    const power::TurbineRecord& rec = power::turbine_lookup(3);
    SUBCASE("no demand") {
        const power::Dispatch d = power::dispatch(rec, 0.0, 1e6);
        CHECK(d.electric_kw == 0.0);
        CHECK(d.thermal_draw_kw == 0.0);
    }
    SUBCASE("small demand runs at the minimum load") {
        const power::Dispatch d = power::dispatch(rec, 0.5 * rec.p_min, 1e6);
        CHECK(d.electric_kw == rec.p_min);
        CHECK(d.unmet_kw == 0.0);
    }
    SUBCASE("electric output never exceeds the generator share of the draw") {
        for (double demand : {1000.0, 5000.0, 12000.0, 20000.0, 40000.0})
            for (double avail : {0.0, 10000.0, 30000.0, 80000.0, 1e6}) {
                const power::Dispatch d = power::dispatch(rec, demand, avail);
                CHECK(d.electric_kw <= power::kMechToElectric * d.thermal_draw_kw + 1e-9);
                CHECK(d.thermal_draw_kw <= avail);
            }
    }
}
