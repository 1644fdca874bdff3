#include "solar/bench.hpp"

#include "solar/detrng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace solar::bench {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double x0_at(const InstanceSpec& spec, std::size_t i) { return spec.x0.at(i); }

// Draw in [lo, hi] for a coordinate, rounding discrete ones.
double snap(const VariableSpec& v, double u, double lo, double hi) {
    if (v.kind == VarKind::Continuous) return lo + u * (hi - lo);
    const double r = std::floor(lo - 0.5 + u * (hi - lo + 1.0) + 0.5);
    return std::clamp(r, lo, hi);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

struct Pair {
    int problem;
    int start;
    bool operator<(const Pair& o) const { return problem != o.problem ? problem < o.problem : start < o.start; }
};

// Counted evaluations to solve each (problem, start) pair, per solver; -1 when unsolved.
struct SolveTable {
    std::vector<std::string> solvers;
    std::vector<Pair> pairs;
    std::vector<int> dims;
    std::vector<std::vector<long>> t;  // [solver][pair]
};

SolveTable solve_table(const std::vector<RunLog>& logs, const std::map<int, double>& f_best, double tau) {
    SolveTable tab;
    std::map<Pair, std::size_t> pair_index;
    for (const RunLog& log : logs) {
        if (!f_best.count(log.problem))
            throw UsageError("no best-known value for problem " + std::to_string(log.problem));
        if (std::find(tab.solvers.begin(), tab.solvers.end(), log.solver) == tab.solvers.end())
            tab.solvers.push_back(log.solver);
        const Pair key{log.problem, log.start};
        if (!pair_index.count(key)) {
            pair_index[key] = 0;
        }
    }
    for (auto& [key, idx] : pair_index) {
        idx = tab.pairs.size();
        tab.pairs.push_back(key);
        tab.dims.push_back(0);
    }
    std::vector<double> f0(tab.pairs.size(), -kInf);
    for (const RunLog& log : logs) {
        const std::size_t j = pair_index.at({log.problem, log.start});
        tab.dims[j] = log.n;
        const double fb = log.first_best();
        if (std::isfinite(fb)) f0[j] = std::max(f0[j], fb);
    }
    tab.t.assign(tab.solvers.size(), std::vector<long>(tab.pairs.size(), -1));
    for (const RunLog& log : logs) {
        const std::size_t j = pair_index.at({log.problem, log.start});
        if (!std::isfinite(f0[j])) continue;
        const double fl = f_best.at(log.problem);
        const double target = fl + tau * (f0[j] - fl);
        const std::size_t s = static_cast<std::size_t>(
            std::find(tab.solvers.begin(), tab.solvers.end(), log.solver) - tab.solvers.begin());
        tab.t[s][j] = log.solved_at(target);
    }
    return tab;
}

class RandomSearch final : public Solver {
public:
    std::string name() const override { return "random"; }
    void start(const InstanceSpec& spec, const DesignPoint& x0, std::uint64_t seed) override {
        spec_ = &spec;
        x0_ = x0;
        first_ = true;
        rng_ = seed_stream(seed, 0x5253);
    }
    DesignPoint propose() override {
        if (first_) {
            first_ = false;
            return x0_;
        }
        DesignPoint x(spec_->variables.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            const VariableSpec& v = spec_->variables[i];
            x[i] = snap(v, rng_.next_unit(), v.lower, sampling_upper(*spec_, i));
        }
        return x;
    }
    void observe(const DesignPoint&, const BlackboxResult&) override {}

private:
    const InstanceSpec* spec_ = nullptr;
    DesignPoint x0_;
    bool first_ = true;
    RngState rng_;
};

// Polls x +- step e_i in order; a feasible improvement moves the center,
// a full unsuccessful sweep halves every step.
class CoordinateSearch final : public Solver {
public:
    std::string name() const override { return "coordinate"; }
    void start(const InstanceSpec& spec, const DesignPoint& x0, std::uint64_t) override {
        spec_ = &spec;
        center_ = x0;
        best_ = kInf;
        step_.clear();
        for (std::size_t i = 0; i < x0.size(); ++i) {
            const VariableSpec& v = spec.variables[i];
            const double width = sampling_upper(spec, i) - v.lower;
            step_.push_back(v.kind == VarKind::Continuous ? width / 4.0 : std::max(1.0, std::round(width / 4.0)));
        }
        dir_ = -1;
        improved_ = false;
    }
    DesignPoint propose() override {
        if (dir_ < 0) return center_;
        const std::size_t i = static_cast<std::size_t>(dir_ / 2);
        const double sign = dir_ % 2 == 0 ? 1.0 : -1.0;
        const VariableSpec& v = spec_->variables[i];
        DesignPoint x = center_;
        double xi = center_[i] + sign * step_[i];
        if (v.kind == VarKind::Categorical) {
            const double span = v.upper - v.lower + 1.0;
            xi = v.lower + std::fmod(std::fmod(xi - v.lower, span) + span, span);
        } else if (v.kind == VarKind::Integer) {
            xi = std::round(xi);
        }
        x[i] = std::clamp(xi, v.lower, sampling_upper(*spec_, i));
        return x;
    }
    void observe(const DesignPoint& x, const BlackboxResult& r) override {
        const bool ok = r.cnt_eval && is_feasible(r.y) && !r.y.objectives.empty();
        if (ok && r.y.objectives.front() < best_) {
            best_ = r.y.objectives.front();
            if (dir_ >= 0) {
                center_ = x;
                improved_ = true;
            }
        }
        ++dir_;
        if (dir_ >= static_cast<int>(2 * center_.size())) {
            dir_ = 0;
            if (!improved_) {
                for (std::size_t i = 0; i < step_.size(); ++i) {
                    const bool continuous = spec_->variables[i].kind == VarKind::Continuous;
                    step_[i] = continuous ? step_[i] / 2.0 : std::max(1.0, std::floor(step_[i] / 2.0));
                }
            }
            improved_ = false;
        }
    }

private:
    const InstanceSpec* spec_ = nullptr;
    DesignPoint center_;
    std::vector<double> step_;
    double best_ = kInf;
    int dir_ = -1;
    bool improved_ = false;
};

}  // namespace

double sampling_upper(const InstanceSpec& spec, std::size_t i) {
    const VariableSpec& v = spec.variables.at(i);
    if (std::isfinite(v.upper)) return v.upper;
    const double factor = v.symbol == "N_hf" ? 4.0 : 10.0;
    return std::max(v.lower, std::round(factor * x0_at(spec, i)));
}

std::vector<DesignPoint> lhs_sample(const InstanceSpec& spec, int k, std::uint64_t seed) {
    if (k < 1) throw UsageError("sample size must be at least 1");
    const std::size_t n = spec.variables.size();
    const std::size_t kk = static_cast<std::size_t>(k);
    std::vector<DesignPoint> pts(kk, DesignPoint(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        const VariableSpec& v = spec.variables[i];
        RngState rng = seed_stream(seed, i + 1);
        if (v.kind == VarKind::Categorical) {
            const double span = v.upper - v.lower + 1.0;
            for (std::size_t j = 0; j < kk; ++j) pts[j][i] = v.lower + std::floor(rng.next_unit() * span);
            continue;
        }
        std::vector<std::size_t> perm(kk);
        for (std::size_t j = 0; j < kk; ++j) perm[j] = j;
        for (std::size_t j = kk; j > 1; --j) {
            const std::size_t r = static_cast<std::size_t>(rng.next_u64() % j);
            std::swap(perm[j - 1], perm[r]);
        }
        const double hi = sampling_upper(spec, i);
        for (std::size_t j = 0; j < kk; ++j) {
            const double u = (static_cast<double>(perm[j]) + rng.next_unit()) / static_cast<double>(kk);
            pts[j][i] = snap(v, u, v.lower, hi);
        }
    }
    return pts;
}

bool is_feasible(const OutputVector& y) {
    for (double f : y.objectives)
        if (is_fail(f)) return false;
    for (double c : y.constraints)
        if (!(c <= 0.0)) return false;
    return true;
}

FeasibilityStats feasibility_stats(int id, const std::vector<DesignPoint>& samples, const EvalOptions& opts) {
    if (samples.empty()) throw UsageError("empty sample");
    for (const DesignPoint& x : samples) check_request(id, x, opts);
    const std::size_t k = samples.size();
    std::vector<char> ap(k, 0), feas(k, 0), sim(k, 0), hidden(k, 0);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t j = 0; j < k; ++j) {
        const Screen sc = screen(id, samples[j]);
        ap[j] = sc.kinds_ok && sc.bounds_ok && sc.apriori_ok;
        if (!ap[j]) continue;
        const EvalResult r = evaluate(id, samples[j], opts);
        sim[j] = r.simulated;
        hidden[j] = r.hidden_failure;
        feas[j] = r.cnt_eval && is_feasible(r.y);
    }
    FeasibilityStats st;
    st.samples = static_cast<int>(k);
    long n_ap = 0, n_feas = 0, n_sim = 0, n_hidden = 0;
    for (std::size_t j = 0; j < k; ++j) {
        n_ap += ap[j];
        n_feas += feas[j];
        n_sim += sim[j];
        n_hidden += hidden[j];
    }
    const double total = static_cast<double>(k);
    st.apriori_pct = 100.0 * static_cast<double>(n_ap) / total;
    st.feasible_pct = 100.0 * static_cast<double>(n_feas) / total;
    st.hidden_pct = n_sim ? 100.0 * static_cast<double>(n_hidden) / static_cast<double>(n_sim)
                          : std::numeric_limits<double>::quiet_NaN();
    return st;
}

long RunLog::solved_at(double target) const {
    long counted = 0;
    for (const LogEntry& e : entries) {
        if (e.cnt_eval) ++counted;
        if (e.best <= target) return counted;
    }
    return -1;
}

double RunLog::first_best() const {
    for (const LogEntry& e : entries)
        if (std::isfinite(e.best)) return e.best;
    return kInf;
}

void write_runlogs(std::ostream& out, const std::vector<RunLog>& logs) {
    out << "problem,n,solver,start,aborted,index,cnt_eval,feasible,best,p,y\n";
    for (const RunLog& log : logs) {
        for (const LogEntry& e : log.entries) {
            out << log.problem << ',' << log.n << ',' << log.solver << ',' << log.start << ',' << log.aborted << ','
                << e.index << ',' << e.cnt_eval << ',' << e.feasible << ',' << format_value(e.best) << ','
                << e.y.objectives.size() << ',' << format_outputs(e.y) << '\n';
        }
        if (log.entries.empty())
            out << log.problem << ',' << log.n << ',' << log.solver << ',' << log.start << ',' << log.aborted
                << ",0,0,0,inf,0,\n";
    }
}

std::vector<RunLog> read_runlogs(std::istream& in) {
    std::vector<RunLog> logs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#' || line.rfind("problem,", 0) == 0) continue;
        const std::vector<std::string> f = split(line, ',');
        if (f.size() != 11) throw UsageError("bad run log row: " + line);
        const int problem = std::stoi(f[0]);
        const std::string& solver = f[2];
        const int start = std::stoi(f[3]);
        if (logs.empty() || logs.back().problem != problem || logs.back().solver != solver ||
            logs.back().start != start) {
            RunLog log;
            log.problem = problem;
            log.n = std::stoi(f[1]);
            log.solver = solver;
            log.start = start;
            log.aborted = f[4] == "1";
            logs.push_back(log);
        }
        const long index = std::stol(f[5]);
        if (index == 0) continue;
        LogEntry e;
        e.index = index;
        e.cnt_eval = f[6] == "1";
        e.feasible = f[7] == "1";
        e.best = parse_value(f[8]);
        const int p = std::stoi(f[9]);
        std::istringstream ys(f[10]);
        std::string tok;
        int k = 0;
        while (ys >> tok) {
            (k < p ? e.y.objectives : e.y.constraints).push_back(parse_value(tok));
            ++k;
        }
        e.y.cnt_eval = e.cnt_eval;
        logs.back().entries.push_back(e);
    }
    return logs;
}

Blackbox evaluator_blackbox(int id, const EvalOptions& opts) {
    return [id, opts](const DesignPoint& x) {
        const EvalResult r = evaluate(id, x, opts);
        return BlackboxResult{r.y, r.cnt_eval};
    };
}

Blackbox subprocess_blackbox(const std::string& command, int id, const std::string& flags) {
    const InstanceSpec& spec = instance_spec(id);
    return [command, id, flags, &spec](const DesignPoint& x) {
        const std::filesystem::path dir = std::filesystem::temp_directory_path();
        const std::filesystem::path file =
            dir / ("solar_bb_" + std::to_string(::getpid()) + "_" +
                   std::to_string(reinterpret_cast<std::uintptr_t>(&x)) + ".txt");
        {
            std::ofstream out(file);
            for (std::size_t i = 0; i < x.size(); ++i) out << (i ? " " : "") << format_value(x[i]);
            out << '\n';
        }
        const std::string cmd = command + " " + std::to_string(id) + " " + file.string() + " " + flags + " -v";
        FILE* pipe = ::popen(cmd.c_str(), "r");
        if (!pipe) throw std::runtime_error("cannot start " + command);
        std::string text;
        char buf[4096];
        while (std::fgets(buf, sizeof buf, pipe)) text += buf;
        const int status = ::pclose(pipe);
        std::filesystem::remove(file);
        if (status != 0) throw std::runtime_error("blackbox exited with status " + std::to_string(status));
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line) && (line.empty() || line.front() == '#')) {
        }
        const std::size_t mark = line.find("cnt_eval=");
        if (mark == std::string::npos) throw std::runtime_error("blackbox output lacks cnt_eval: " + line);
        const bool cnt = line.compare(mark, 13, "cnt_eval=true") == 0;
        BlackboxResult r;
        r.y = parse_outputs(line.substr(0, mark), spec.p, spec.m, cnt);
        r.cnt_eval = cnt;
        return r;
    };
}

std::unique_ptr<Solver> make_random_search() { return std::make_unique<RandomSearch>(); }
std::unique_ptr<Solver> make_coordinate_search() { return std::make_unique<CoordinateSearch>(); }

std::vector<RunLog> run_campaign(const std::function<std::unique_ptr<Solver>()>& make_solver,
                                 const std::function<Blackbox()>& make_blackbox, const InstanceSpec& spec,
                                 const std::vector<DesignPoint>& starts, const CampaignOptions& opts) {
    if (opts.budget < 1) throw UsageError("budget must be at least 1");
    const long max_attempts = opts.max_attempts > 0 ? opts.max_attempts : 10 * opts.budget;
    std::vector<RunLog> logs(starts.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t s = 0; s < starts.size(); ++s) {
        std::unique_ptr<Solver> solver = make_solver();
        const Blackbox bb = make_blackbox();
        RunLog& log = logs[s];
        log.problem = spec.id;
        log.n = spec.n;
        log.solver = solver->name();
        log.start = static_cast<int>(s) + 1;
        solver->start(spec, starts[s], mix64(opts.seed ^ (s + 1)));
        long counted = 0;
        double best = kInf;
        for (long a = 1; a <= max_attempts && counted < opts.budget; ++a) {
            const DesignPoint x = solver->propose();
            BlackboxResult r;
            try {
                r = bb(x);
            } catch (const std::exception&) {
                log.aborted = true;
                break;
            }
            LogEntry e;
            e.index = a;
            e.y = r.y;
            e.cnt_eval = r.cnt_eval;
            e.feasible = r.cnt_eval && is_feasible(r.y);
            if (r.cnt_eval) ++counted;
            if (e.feasible && !r.y.objectives.empty()) best = std::min(best, r.y.objectives.front());
            e.best = best;
            log.entries.push_back(e);
            solver->observe(x, r);
        }
    }
    return logs;
}

std::map<int, double> best_known(const std::vector<RunLog>& logs) {
    std::map<int, double> out;
    for (const RunLog& log : logs) {
        double& v = out.try_emplace(log.problem, kInf).first->second;
        for (const LogEntry& e : log.entries) v = std::min(v, e.best);
    }
    return out;
}

std::vector<ProfileCurve> data_profile(const std::vector<RunLog>& logs, const std::map<int, double>& f_best,
                                       double tau, const std::vector<double>& alphas) {
    const SolveTable tab = solve_table(logs, f_best, tau);
    std::vector<ProfileCurve> curves;
    const double np = static_cast<double>(tab.pairs.size());
    for (std::size_t s = 0; s < tab.solvers.size(); ++s) {
        ProfileCurve c;
        c.solver = tab.solvers[s];
        for (double a : alphas) {
            long hits = 0;
            for (std::size_t j = 0; j < tab.pairs.size(); ++j) {
                const long t = tab.t[s][j];
                if (t >= 0 && static_cast<double>(t) <= a * (tab.dims[j] + 1)) ++hits;
            }
            c.alpha.push_back(a);
            c.value.push_back(static_cast<double>(hits) / np);
        }
        curves.push_back(c);
    }
    return curves;
}

std::vector<ProfileCurve> performance_profile(const std::vector<RunLog>& logs, const std::map<int, double>& f_best,
                                              double tau, const std::vector<double>& alphas) {
    const SolveTable tab = solve_table(logs, f_best, tau);
    const std::size_t np = tab.pairs.size();
    std::vector<long> t_min(np, -1);
    for (std::size_t j = 0; j < np; ++j)
        for (std::size_t s = 0; s < tab.solvers.size(); ++s) {
            const long t = tab.t[s][j];
            if (t >= 0 && (t_min[j] < 0 || t < t_min[j])) t_min[j] = t;
        }
    std::vector<ProfileCurve> curves;
    for (std::size_t s = 0; s < tab.solvers.size(); ++s) {
        ProfileCurve c;
        c.solver = tab.solvers[s];
        for (double a : alphas) {
            long hits = 0;
            for (std::size_t j = 0; j < np; ++j) {
                const long t = tab.t[s][j];
                if (t >= 0 && static_cast<double>(t) / static_cast<double>(t_min[j]) <= a) ++hits;
            }
            c.alpha.push_back(a);
            c.value.push_back(static_cast<double>(hits) / static_cast<double>(np));
        }
        curves.push_back(c);
    }
    return curves;
}

void write_profile(std::ostream& out, const ProfileCurve& curve) {
    out << "alpha,value\n";
    for (std::size_t i = 0; i < curve.alpha.size(); ++i)
        out << format_value(curve.alpha[i]) << ',' << format_value(curve.value[i]) << '\n';
}

}  // namespace solar::bench
