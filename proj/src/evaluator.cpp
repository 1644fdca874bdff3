#include "solar/evaluator.hpp"

#include "solar/detmath.hpp"
#include "solar/detrng.hpp"
#include "solar/scenario.hpp"

#include <chrono>
#include <cmath>
#include <optional>

namespace solar {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void check_request_of(const InstanceSpec& spec, const DesignPoint& x, const EvalOptions& opts) {
    opts.validate();
    if (static_cast<int>(x.size()) != spec.n)
        throw UsageError(spec.name + " expects " + std::to_string(spec.n) + " values, got " + std::to_string(x.size()));
    if (!spec.accepts_fidelity && opts.fidelity != 1.0)
        throw UsageError(spec.name + " has no fidelity option");
}

std::vector<std::size_t> positions(const InstanceSpec& spec, OutputClass cls) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < spec.outputs.size(); ++i)
        if (spec.outputs[i].cls == cls) out.push_back(i);
    return out;
}

// Simulated part of one evaluation of instances 1..9.
struct SimulatedOutputs {
    std::vector<double> values;
    bool failed = false;
    int replications = 0;
};

SimulatedOutputs simulate(int id, const DesignPoint& x, const EvalOptions& opts) {
    const InstanceSpec& spec = instance_spec(id);
    const sim::Scenario scenario(id, x, sim::fidelity_map(spec, opts.fidelity));
    SimulatedOutputs out;
    const sim::RunOutputs nominal = scenario.nominal();
    out.values = nominal.values;
    out.failed = nominal.failed;

    const std::vector<std::size_t> stoch = positions(spec, OutputClass::Stochastic);
    if (stoch.empty()) {
        out.replications = opts.gauss_rule() ? 2 : static_cast<int>(opts.replications);
        return out;
    }
    auto run = [&](std::uint64_t k) {
        RngState rng = seed_stream(opts.seed, k);
        return scenario.noisy(rng);
    };

    std::vector<std::vector<double>> samples(stoch.size());
    bool failed = false;
    if (!opts.gauss_rule()) {
        const int reps = static_cast<int>(opts.replications);
        std::vector<sim::RunOutputs> runs(static_cast<std::size_t>(reps));
#pragma omp parallel for schedule(dynamic) if (reps > 1)
        for (int k = 0; k < reps; ++k) runs[static_cast<std::size_t>(k)] = run(static_cast<std::uint64_t>(k + 1));
        for (const auto& r : runs) {
            failed = failed || r.failed;
            for (std::size_t j = 0; j < stoch.size(); ++j) samples[j].push_back(r.values[stoch[j]]);
        }
        out.replications = reps;
    } else {
        std::vector<RunningStat> stats(stoch.size());
        int k = 0;
        while (true) {
            ++k;
            const sim::RunOutputs r = run(static_cast<std::uint64_t>(k));
            failed = failed || r.failed;
            for (std::size_t j = 0; j < stoch.size(); ++j) {
                samples[j].push_back(r.values[stoch[j]]);
                stats[j].push(r.values[stoch[j]]);
            }
            if (failed) break;
            if (k >= 2 && gauss_should_stop(stats, opts.replications, k)) break;
        }
        out.replications = k;
    }
    for (std::size_t j = 0; j < stoch.size(); ++j) out.values[stoch[j]] = replication_mean(samples[j]);
    out.failed = out.failed || failed;
    return out;
}

OutputVector combine(const InstanceSpec& spec, const OutputVector& apriori, const std::vector<double>& sim) {
    OutputVector y = apriori;
    for (std::size_t i = 0; i < spec.outputs.size(); ++i)
        if (spec.outputs[i].cls != OutputClass::Apriori) y.at(i) = sim[i];
    return y;
}

}  // namespace

double replication_mean(const std::vector<double>& samples) {
    if (samples.empty()) return kFail;
    const double v1 = samples.front();
    if (is_fail(v1)) return kFail;
    double acc = 0.0;
    for (std::size_t k = 1; k < samples.size(); ++k) {
        if (is_fail(samples[k])) return kFail;
        acc += samples[k] - v1;
    }
    return v1 + acc / static_cast<double>(samples.size());
}

void RunningStat::push(double v) {
    if (is_fail(v)) failed = true;
    ++count;
    const double d = v - mean;
    mean += d / static_cast<double>(count);
    m2 += d * (v - mean);
}

double three_digit_half_unit(double mu) {
    double a = std::fabs(mu);
    if (a == 0.0 || !std::isfinite(a)) return 0.0;
    // Exact decade search; powers of ten are exact doubles up to 1e22.
    int e = 0;
    double p = 1.0;
    while (a >= 10.0 * p && e < 300) {
        p *= 10.0;
        ++e;
    }
    while (a < p && e > -300) {
        p /= 10.0;
        --e;
    }
    return 0.5 * p / 100.0;
}

bool gauss_should_stop(const std::vector<RunningStat>& stats, double r, int k) {
    if (k >= kMaxReplications) return true;
    double prob = 1.0;
    for (const RunningStat& s : stats) {
        if (s.failed) return true;
        const double var = s.variance();
        if (var == 0.0) continue;
        const double h = three_digit_half_unit(s.mean);
        const double se = std::sqrt(var / static_cast<double>(k));
        prob *= dm::erf(h / (se * std::sqrt(2.0)));
    }
    return prob >= r;
}

Screen screen(int id, const DesignPoint& x) {
    const InstanceSpec& spec = instance_spec(id);
    Screen s;
    s.y = failed_outputs(spec.p, spec.m);
    if (non_integer_index(spec, x) >= 0) {
        s.kinds_ok = false;
        return s;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        const VariableSpec& v = spec.variables[i];
        if (!(x[i] >= v.lower && x[i] <= v.upper)) s.bounds_ok = false;
    }
    if (!s.bounds_ok) return s;
    if (id == 10) return s;
    const AprioriResult ap = apriori_eval(id, x);
    s.y = ap.y;
    s.apriori_ok = ap.satisfied;
    return s;
}

OutputVector single_replication(int id, const DesignPoint& x, const EvalOptions& opts, std::uint64_t stream) {
    const int sid = id == 10 ? 6 : id;
    const InstanceSpec& spec = instance_spec(sid);
    const sim::Scenario scenario(sid, x, sim::fidelity_map(spec, opts.fidelity));
    const sim::RunOutputs nominal = scenario.nominal();
    std::vector<double> values = nominal.values;
    if (spec.has_stochastic()) {
        RngState rng = seed_stream(opts.seed, stream);
        const sim::RunOutputs noisy = scenario.noisy(rng);
        for (std::size_t i = 0; i < values.size(); ++i)
            if (spec.outputs[i].cls == OutputClass::Stochastic) values[i] = noisy.values[i];
    }
    OutputVector y = combine(spec, apriori_eval(sid, x).y, values);
    if (id == 10) {
        OutputVector y10;
        y10.objectives = {penalty_objective(y)};
        return y10;
    }
    return y;
}

void check_request(int id, const DesignPoint& x, const EvalOptions& opts) { check_request_of(instance_spec(id), x, opts); }

EvalResult evaluate(int id, const DesignPoint& x, const EvalOptions& opts) {
    const auto t0 = Clock::now();
    const InstanceSpec& spec = instance_spec(id);
    check_request_of(spec, x, opts);

    EvalResult res;
    const Screen sc = screen(id, x);
    res.y = sc.y;
    res.y.cnt_eval = false;
    if (!sc.kinds_ok || !sc.bounds_ok || !sc.apriori_ok || opts.fidelity == 0.0) {
        res.wall_time = seconds_since(t0);
        return res;
    }

    const int sid = id == 10 ? 6 : id;
    const InstanceSpec& sspec = instance_spec(sid);
    const auto ts = Clock::now();
    const SimulatedOutputs sim = simulate(sid, x, opts);
    res.simulation_seconds = seconds_since(ts);
    res.simulated = true;
    res.replications_used = sim.replications;
    res.hidden_failure = sim.failed;

    OutputVector y = combine(sspec, id == 10 ? apriori_eval(sid, x).y : sc.y, sim.values);
    if (id == 10) {
        OutputVector y10;
        y10.objectives = {penalty_objective(y)};
        y = y10;
    }
    for (std::size_t i = 0; i < y.size(); ++i)
        if (is_fail(y.at(i))) res.hidden_failure = true;
    res.cnt_eval = !res.hidden_failure;
    y.cnt_eval = res.cnt_eval;
    res.y = y;
    res.wall_time = seconds_since(t0);
    return res;
}

}  // namespace solar
