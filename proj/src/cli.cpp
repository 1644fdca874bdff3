#include "solar/cli.hpp"

#include "solar/check.hpp"
#include "solar/data.hpp"
#include "solar/evaluator.hpp"
#include "solar/instances.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace solar::cli {
namespace {

const char* kind_name(VarKind k) {
    switch (k) {
        case VarKind::Continuous: return "continuous";
        case VarKind::Integer: return "integer";
        case VarKind::Categorical: return "categorical";
    }
    return "?";
}

const char* class_name(OutputClass c) {
    switch (c) {
        case OutputClass::Apriori: return "a priori";
        case OutputClass::Deterministic: return "simulation";
        case OutputClass::Stochastic: return "simulation, stochastic";
    }
    return "?";
}

std::string bound(double v) { return std::isinf(v) ? (v > 0 ? "+inf" : "-inf") : format_value(v); }

int parse_id(const std::string& s) {
    int id = 0;
    try {
        std::size_t used = 0;
        id = std::stoi(s, &used);
        if (used != s.size()) throw UsageError("");
    } catch (const std::exception&) {
        throw UsageError("unknown instance '" + s + "'");
    }
    instance_spec(id);
    return id;
}

std::uint64_t parse_seed(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw UsageError("seed must be a non-negative integer or 'diff'");
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw UsageError("seed out of range: " + s);
    }
}

struct Request {
    int id = 0;
    std::string file;
    EvalOptions opts;
    bool seed_diff = false;
    bool verbose = false;
};

Request parse_request(const std::vector<std::string>& args) {
    Request r;
    std::vector<std::string> pos;
    for (const std::string& a : args) {
        if (a.rfind("-seed=", 0) == 0) {
            const std::string v = a.substr(6);
            if (v == "diff") r.seed_diff = true;
            else r.opts.seed = parse_seed(v);
        } else if (a.rfind("-rep=", 0) == 0) {
            r.opts.replications = parse_value(a.substr(5));
        } else if (a.rfind("-fid=", 0) == 0) {
            r.opts.fidelity = parse_value(a.substr(5));
        } else if (a == "-v") {
            r.verbose = true;
        } else if (!a.empty() && a.front() == '-') {
            throw UsageError("unknown option " + a);
        } else {
            pos.push_back(a);
        }
    }
    if (pos.size() != 2) throw UsageError("expected an instance id and an input file");
    r.id = parse_id(pos[0]);
    r.file = pos[1];
    r.opts.validate();
    if (!instance_spec(r.id).accepts_fidelity && r.opts.fidelity != 1.0)
        throw UsageError(instance_spec(r.id).name + " has no fidelity option");
    return r;
}

int evaluate_file(const Request& req, std::ostream& out, std::ostream& err) {
    std::ifstream in(req.file);
    if (!in) throw UsageError("cannot read " + req.file);
    std::stringstream buf;
    buf << in.rdbuf();
    const InstanceSpec& spec = instance_spec(req.id);
    const std::vector<DesignPoint> points = parse_points(buf.str(), spec.n);

    EvalOptions opts = req.opts;
    if (req.seed_diff) {
        std::random_device rd;
        opts.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
        err << "seed=" << opts.seed << "\n";
    }
    std::vector<std::string> lines(points.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < points.size(); ++i) {
        const EvalResult r = evaluate(req.id, points[i], opts);
        std::string line = format_outputs(r.y);
        if (req.verbose) line += std::string(" cnt_eval=") + (r.cnt_eval ? "true" : "false") + " seed=" + std::to_string(opts.seed);
        lines[i] = line;
    }
    for (const std::string& l : lines) out << l << "\n";
    return 0;
}

int self_check(std::ostream& out) {
    const std::vector<check::Outcome> results = check::run(data::file("golden/check.txt"));
    int failed = 0;
    for (const check::Outcome& o : results) {
        out << (o.pass ? "PASS " : "FAIL ") << o.name << "\n";
        if (!o.pass) {
            ++failed;
            out << "  " << o.detail << "\n";
        }
    }
    out << (failed ? "check failed: " + std::to_string(failed) + " of " : "check passed: all ")
        << results.size() << " cases" << (failed ? " differ" : " bit-identical") << "\n";
    return failed ? 1 : 0;
}

}  // namespace

std::vector<DesignPoint> parse_points(const std::string& text, int n) {
    std::vector<DesignPoint> rows;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        DesignPoint x;
        std::string tok;
        while (ls >> tok) x.push_back(parse_value(tok));
        if (x.empty()) continue;
        if (static_cast<int>(x.size()) != n)
            throw UsageError("line " + std::to_string(lineno) + ": expected " + std::to_string(n) + " values, got " +
                             std::to_string(x.size()));
        rows.push_back(x);
    }
    if (rows.empty()) throw UsageError("input file holds no point");
    return rows;
}

void print_usage(std::ostream& out) {
    out << "usage:\n"
           "  solar -h                 this help\n"
           "  solar -h <id>            variables, bounds, start point and outputs of an instance\n"
           "  solar <id> <file> [opts] evaluate every row of <file>\n"
           "  solar -check             compare a frozen set of evaluations with golden/check.txt\n"
           "\n"
           "options:\n"
           "  -seed=S|diff  base seed, default 0; 'diff' draws one and prints it on stderr\n"
           "  -rep=R        replications, default 1; a real in (0,1) selects the adaptive rule\n"
           "  -fid=F        fidelity in [0,1], default 1; multifidelity instances only\n"
           "  -v            append cnt_eval and the seed to each output line\n"
           "\n"
           "output: one line per input row, objectives then constraints (feasible when <= 0);\n"
           "1e+20 marks a value the simulator could not produce.\n"
           "\n"
           "instances:\n";
    for (int id = 1; id <= 10; ++id) {
        const InstanceSpec& s = instance_spec(id);
        out << "  " << std::left << std::setw(3) << id << std::setw(10) << s.name << "n=" << std::setw(3) << s.n
            << "p=" << s.p << " m=" << std::setw(3) << s.m << s.summary << "\n";
    }
}

void print_instance(std::ostream& out, int id) {
    const InstanceSpec& s = instance_spec(id);
    out << s.name << ": " << s.summary << "\n";
    out << "n=" << s.n << " p=" << s.p << " m=" << s.m << " multifidelity=" << (s.multifidelity ? "yes" : "no")
        << " -fid accepted=" << (s.accepts_fidelity ? "yes" : "no") << "\n\nvariables:\n";
    for (const VariableSpec& v : s.variables) {
        out << "  x" << std::left << std::setw(3) << v.index << std::setw(14) << v.symbol << std::setw(12)
            << kind_name(v.kind) << "[" << bound(v.lower) << ", " << bound(v.upper) << "] " << v.unit << "  "
            << v.description << "\n";
    }
    out << "\nstart point:\n ";
    for (double v : s.x0) out << " " << format_value(v);
    out << "\n\noutputs:\n";
    for (const OutputSpec& o : s.outputs) {
        out << "  " << std::left << std::setw(5) << o.name << std::setw(24) << class_name(o.cls) << o.description;
        if (o.cls == OutputClass::Apriori && o.linear) out << " (linear)";
        out << "\n";
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        if (args.empty()) {
            print_usage(err);
            return kUsageExit;
        }
        if (args[0] == "-h" || args[0] == "--help") {
            if (args.size() == 1) print_usage(out);
            else if (args.size() == 2) print_instance(out, parse_id(args[1]));
            else throw UsageError("-h takes at most one instance id");
            return 0;
        }
        if (args[0] == "-check") {
            if (args.size() != 1) throw UsageError("-check takes no argument");
            return self_check(out);
        }
        return evaluate_file(parse_request(args), out, err);
    } catch (const UsageError& e) {
        err << "solar: " << e.what() << "\n";
        return kUsageExit;
    }
}

}  // namespace solar::cli
