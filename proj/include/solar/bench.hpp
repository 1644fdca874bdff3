#pragma once

#include "solar/core_model.hpp"
#include "solar/evaluator.hpp"
#include "solar/instances.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

// Benchmarking harness: sampling, campaigns, feasibility statistics and
// data/performance profiles.
namespace solar::bench {

/// Upper bound used for sampling coordinate i; unbounded integers are capped
/// at 4 x0 (heliostat count) or 10 x0 (baffle and tube counts).
double sampling_upper(const InstanceSpec& spec, std::size_t i);

/// Latin hypercube sample of k points. Continuous and integer coordinates
/// are stratified (integers then rounded), the categorical turbine is drawn
/// uniformly over its values.
std::vector<DesignPoint> lhs_sample(const InstanceSpec& spec, int k, std::uint64_t seed);

/// All constraints <= 0 and nothing failed.
bool is_feasible(const OutputVector& y);

struct FeasibilityStats {
    int samples = 0;
    double apriori_pct = 0.0;   // a-priori constraints satisfied
    double feasible_pct = 0.0;  // every constraint satisfied
    double hidden_pct = 0.0;    // share of simulated points that failed; NaN when nothing was simulated
};

/// Evaluates every sample; rows run in parallel.
FeasibilityStats feasibility_stats(int id, const std::vector<DesignPoint>& samples, const EvalOptions& opts);

struct LogEntry {
    long index = 0;  // 1-based attempt number
    OutputVector y;
    bool cnt_eval = false;
    bool feasible = false;
    double best = 0.0;  // best feasible f1 so far, +inf before the first one
};

struct RunLog {
    int problem = 0;
    int n = 0;  // problem dimension
    std::string solver;
    int start = 0;
    bool aborted = false;
    std::vector<LogEntry> entries;

    /// Counted evaluations up to and including the first entry whose best
    /// reaches target, or -1 when none does.
    long solved_at(double target) const;
    /// First finite best-so-far value, +inf when the run never found a feasible point.
    double first_best() const;
};

/// CSV with one row per entry: problem,n,solver,start,aborted,index,cnt_eval,feasible,best,y
/// where y holds the outputs separated by spaces.
void write_runlogs(std::ostream& out, const std::vector<RunLog>& logs);
std::vector<RunLog> read_runlogs(std::istream& in);

/// Outcome of one blackbox call.
struct BlackboxResult {
    OutputVector y;
    bool cnt_eval = false;
};

using Blackbox = std::function<BlackboxResult(const DesignPoint&)>;

/// Calls the in-process evaluator.
Blackbox evaluator_blackbox(int id, const EvalOptions& opts);

/// Runs `command <id> <file> <flags>` once per point through the CLI file
/// protocol, parsing the output line and the cnt_eval flag printed by -v.
/// Throws std::runtime_error when the process fails or prints garbage.
Blackbox subprocess_blackbox(const std::string& command, int id, const std::string& flags);

/// A sequential solver driven by the campaign loop.
class Solver {
public:
    virtual ~Solver() = default;
    virtual std::string name() const = 0;
    virtual void start(const InstanceSpec& spec, const DesignPoint& x0, std::uint64_t seed) = 0;
    virtual DesignPoint propose() = 0;
    virtual void observe(const DesignPoint& x, const BlackboxResult& r) = 0;
};

/// Uniform sampling over the (capped) box; x0 first.
std::unique_ptr<Solver> make_random_search();
/// Compass search on the coordinates with step halving; x0 first.
std::unique_ptr<Solver> make_coordinate_search();

struct CampaignOptions {
    long budget = 0;             // counted evaluations per start point
    long max_attempts = 0;       // cap on all calls, 0 means 10 x budget
    std::uint64_t seed = 0;
};

/// One RunLog per start point. Start points run in parallel, each one
/// serially. A blackbox that throws ends its log, marked aborted.
std::vector<RunLog> run_campaign(const std::function<std::unique_ptr<Solver>()>& make_solver,
                                 const std::function<Blackbox()>& make_blackbox, const InstanceSpec& spec,
                                 const std::vector<DesignPoint>& starts, const CampaignOptions& opts);

struct ProfileCurve {
    std::string solver;
    std::vector<double> alpha;
    std::vector<double> value;
};

/// Smallest best value per problem over all logs, for use as f_L.
std::map<int, double> best_known(const std::vector<RunLog>& logs);

/// Data profile d_s(alpha): share of (problem, start) pairs solved within
/// alpha (n + 1) counted evaluations. Solved means best <= f_L + tau (f0 - f_L),
/// f0 being the largest first feasible value among the solvers on that pair.
/// Throws UsageError when f_L is missing for a problem.
std::vector<ProfileCurve> data_profile(const std::vector<RunLog>& logs, const std::map<int, double>& f_best,
                                       double tau, const std::vector<double>& alphas);

/// Performance profile rho_s(alpha): share of pairs where the solver's
/// evaluation count is within a factor alpha of the best solver's.
std::vector<ProfileCurve> performance_profile(const std::vector<RunLog>& logs, const std::map<int, double>& f_best,
                                              double tau, const std::vector<double>& alphas);

/// `alpha,value` rows of one curve.
void write_profile(std::ostream& out, const ProfileCurve& curve);

}  // namespace solar::bench
