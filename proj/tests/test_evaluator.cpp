#include "doctest.h"

#include "solar/evaluator.hpp"
#include "solar/scenario.hpp"

#include <cmath>

using namespace solar;

TEST_CASE("default options") {
    const EvalOptions o;
    CHECK(o.seed == 0);
    CHECK(o.replications == 1.0);
    CHECK(o.fidelity == 1.0);
    CHECK_FALSE(o.gauss_rule());
    CHECK_THROWS_AS((EvalOptions{0, 0.0, 1.0}.validate()), UsageError);
    CHECK_THROWS_AS((EvalOptions{0, 2.5, 1.0}.validate()), UsageError);
    CHECK_THROWS_AS((EvalOptions{0, 1.0, 1.5}.validate()), UsageError);
    CHECK_NOTHROW((EvalOptions{0, 0.5, 0.3}.validate()));
}

TEST_CASE("wrong arity is a usage error") {
    CHECK_THROWS_AS(evaluate(6, {1.0, 2.0}), UsageError);
}

TEST_CASE("non-integer value at an integer coordinate fails everything") {
    DesignPoint x = instance_spec(1).x0;
    x[5] += 0.5;
    const EvalResult r = evaluate(1, x);
    CHECK_FALSE(r.cnt_eval);
    CHECK_FALSE(r.simulated);
    for (std::size_t i = 0; i < r.y.size(); ++i) CHECK(r.y.at(i) == kFail);
}

TEST_CASE("a-priori violation skips the simulator") {
    DesignPoint x = instance_spec(2).x0;
    x[7] = 2.0;  // minimum distance beyond the maximum
    x[8] = 1.5;
    const EvalResult r = evaluate(2, x);
    CHECK_FALSE(r.simulated);
    CHECK(r.simulation_seconds == 0.0);
    CHECK_FALSE(r.cnt_eval);
    const InstanceSpec& s = instance_spec(2);
    bool some_violated = false;
    for (std::size_t i = 0; i < r.y.size(); ++i) {
        if (s.outputs[i].cls == OutputClass::Apriori) {
            CHECK_FALSE(is_fail(r.y.at(i)));
            if (s.outputs[i].name[0] == 'c' && r.y.at(i) > 0.0) some_violated = true;
        } else {
            CHECK(is_fail(r.y.at(i)));
        }
    }
    CHECK(some_violated);
}

TEST_CASE("zero field radius hits the hidden constraint") {
    DesignPoint x = instance_spec(1).x0;
    x[7] = 0.0;
    const EvalResult r = evaluate(1, x);
    CHECK(r.simulated);
    CHECK(r.hidden_failure);
    CHECK_FALSE(r.cnt_eval);
}

TEST_CASE("repeated evaluation is bit-identical") {
    const DesignPoint x = instance_spec(7).x0;
    const EvalOptions o{7, 5, 1.0};
    CHECK(evaluate(7, x, o).y == evaluate(7, x, o).y);
}

TEST_CASE("replication average is the fixed-order mean of single runs") {
    const DesignPoint x = instance_spec(7).x0;
    for (int reps : {2, 5}) {
        const EvalOptions o{3, static_cast<double>(reps), 1.0};
        const EvalResult r = evaluate(7, x, o);
        CHECK(r.replications_used == reps);
        std::vector<OutputVector> runs;
        for (int k = 1; k <= reps; ++k) runs.push_back(single_replication(7, x, o, static_cast<std::uint64_t>(k)));
        for (std::size_t i = 0; i < r.y.size(); ++i) {
            std::vector<double> v;
            for (const OutputVector& y : runs) v.push_back(y.at(i));
            CHECK(r.y.at(i) == replication_mean(v));
        }
    }
}

TEST_CASE("replication mean") {
    CHECK(replication_mean({2.5, 2.5, 2.5}) == 2.5);
    CHECK(replication_mean({1.0, 2.0, 3.0}) == 2.0);
    CHECK(replication_mean({1.0, kFail}) == kFail);
}

TEST_CASE("gauss stopping rule") {
    SUBCASE("zero variance stops at two") {
        std::vector<RunningStat> st(3);
        for (auto& s : st) {
            s.push(4.0);
            s.push(4.0);
        }
        CHECK(gauss_should_stop(st, 0.95, 2));
    }
    SUBCASE("large spread never stops before the cap") {
        std::vector<RunningStat> st(1);
        for (int k = 0; k < 100; ++k) st[0].push(k % 2 ? 1000.0 : -998.0);
        CHECK_FALSE(gauss_should_stop(st, 0.95, 100));
        CHECK(gauss_should_stop(st, 0.95, kMaxReplications));
    }
    SUBCASE("a looser target stops no later") {
        std::vector<RunningStat> st(2);
        for (int k = 0; k < 400; ++k) {
            st[0].push(100.0 + (k % 7));
            st[1].push(50.0 + (k % 3));
        }
        for (int k = 2; k <= 400; k += 10)
            if (gauss_should_stop(st, 0.9, k)) CHECK(gauss_should_stop(st, 0.5, k));
    }
    CHECK(three_digit_half_unit(123.4) == doctest::Approx(0.5));
    CHECK(three_digit_half_unit(-0.0456) == doctest::Approx(0.00005));
}

TEST_CASE("gauss mode on a noisy instance") {
    const EvalResult r = evaluate(7, instance_spec(7).x0, EvalOptions{11, 0.5, 0.5});
    CHECK(r.replications_used >= 2);
    CHECK(r.replications_used <= kMaxReplications);
    CHECK(r.cnt_eval);
}

TEST_CASE("fidelity") {
    const InstanceSpec& s = instance_spec(2);
    const sim::Resolution full = sim::fidelity_map(s, 1.0);
    const sim::Resolution half = sim::fidelity_map(s, 0.5);
    CHECK(full.rays == 64);
    CHECK(half.steps < full.steps);
    CHECK(std::abs(2 * half.steps - full.steps) <= 1);
    CHECK(sim::fidelity_map(s, 0.0).steps == sim::kMinSteps);

    const EvalResult r = evaluate(2, s.x0, EvalOptions{0, 1, 0.0});
    CHECK_FALSE(r.simulated);
    for (std::size_t i = 0; i < r.y.size(); ++i)
        CHECK(is_fail(r.y.at(i)) == (s.outputs[i].cls != OutputClass::Apriori));
}

TEST_CASE("out-of-bounds point fails every output") {
    DesignPoint x = instance_spec(6).x0;
    x[0] = 1.0e4;
    const EvalResult r = evaluate(6, x);
    for (std::size_t i = 0; i < r.y.size(); ++i) CHECK(r.y.at(i) == kFail);
    CHECK_FALSE(r.cnt_eval);
}

TEST_CASE("start points evaluate") {
    for (int id : {1, 6, 7, 10}) {
        CAPTURE(id);
        const EvalResult r = evaluate(id, instance_spec(id).x0);
        CHECK(r.cnt_eval);
        for (std::size_t i = 0; i < r.y.size(); ++i) CHECK(std::isfinite(r.y.at(i)));
    }
}
