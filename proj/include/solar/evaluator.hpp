#pragma once

#include "solar/core_model.hpp"
#include "solar/instances.hpp"

#include <cstdint>
#include <vector>

namespace solar {

inline constexpr int kMaxReplications = 50000;

struct EvalResult {
    OutputVector y;
    bool cnt_eval = false;
    int replications_used = 0;
    double wall_time = 0.0;           // s
    double simulation_seconds = 0.0;  // s spent inside the simulator, exactly 0 when it never ran
    bool simulated = false;
    bool hidden_failure = false;      // the simulator ran but could not produce every output
};

/// Mean of a fixed-order sample as v1 + (sum_{k>=2} (v_k - v1)) / R, so
/// identical samples return their common value unchanged. FAIL anywhere
/// gives FAIL.
double replication_mean(const std::vector<double>& samples);

/// Welford accumulator for one stochastic output.
struct RunningStat {
    long count = 0;
    double mean = 0.0;
    double m2 = 0.0;
    bool failed = false;

    void push(double v);
    double variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }
};

/// Half a unit in the third significant digit of mu, 0.5 * 10^(floor(log10|mu|) - 2).
double three_digit_half_unit(double mu);

/// Stop when the product over outputs of P(|drift| < half unit) reaches r,
/// each factor erf(h / (se sqrt 2)) with se = s / sqrt(k); always stops at
/// the replication cap. Requires k >= 2.
bool gauss_should_stop(const std::vector<RunningStat>& stats, double r, int k);

/// Outcome of the variable-kind, bound and a-priori checks, without simulating.
struct Screen {
    bool kinds_ok = true;
    bool bounds_ok = true;
    bool apriori_ok = true;
    OutputVector y;  // a-priori values, everything else FAIL
};

Screen screen(int id, const DesignPoint& x);

/// Throws UsageError when evaluate would reject the request.
void check_request(int id, const DesignPoint& x, const EvalOptions& opts);

/// Throws UsageError for malformed requests (arity, options, -fid where the
/// instance has no fidelity knob).
EvalResult evaluate(int id, const DesignPoint& x, const EvalOptions& opts = {});

/// The outputs of one replication with stream id k (1-based), as they enter
/// the average.
OutputVector single_replication(int id, const DesignPoint& x, const EvalOptions& opts, std::uint64_t stream);

}  // namespace solar
