#include "solar/check.hpp"

#include "solar/bench.hpp"
#include "solar/data.hpp"
#include "solar/evaluator.hpp"
#include "solar/instances.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>

namespace solar::check {
namespace {

EvalOptions options(std::uint64_t seed, double rep, double fid) {
    EvalOptions o;
    o.seed = seed;
    o.replications = rep;
    o.fidelity = fid;
    return o;
}

// First a-priori feasible point of a small Latin hypercube, else its first point.
DesignPoint sampled_point(int id) {
    const std::vector<DesignPoint> pts = bench::lhs_sample(instance_spec(id), 2000, 99);
    for (const DesignPoint& x : pts) {
        const Screen s = screen(id, x);
        if (s.kinds_ok && s.bounds_ok && s.apriori_ok) return x;
    }
    return pts.front();
}

}  // namespace

std::vector<Case> cases() {
    std::vector<Case> out;
    for (int id = 1; id <= 10; ++id) {
        const InstanceSpec& spec = instance_spec(id);
        const std::string tag = "s" + std::to_string(id) + "_";
        out.push_back({tag + "x0", id, spec.x0, options(0, 1, 1)});
        out.push_back({tag + "x0_rep3", id, spec.x0, options(7, 3, 1)});
        if (spec.accepts_fidelity) out.push_back({tag + "x0_fid", id, spec.x0, options(1, 2, 0.5)});
        out.push_back({tag + "lhs", id, sampled_point(id), options(3, 1, spec.accepts_fidelity ? 0.3 : 1.0)});
    }
    DesignPoint hidden = instance_spec(1).x0;
    hidden[7] = 0.0;
    out.push_back({"s1_hidden", 1, hidden, options(0, 1, 1)});
    DesignPoint fractional = instance_spec(3).x0;
    fractional[5] += 0.5;
    out.push_back({"s3_fractional", 3, fractional, options(0, 1, 1)});
    out.push_back({"s7_gauss", 7, instance_spec(7).x0, options(11, 0.5, 0.5)});
    out.push_back({"s7_apriori_fid0", 7, instance_spec(7).x0, options(0, 1, 0)});
    return out;
}

std::string hex_bits(double v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(std::bit_cast<std::uint64_t>(v)));
    return buf;
}

std::string format_point(const DesignPoint& x) {
    std::string s;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) s += ' ';
        s += format_value(x[i]);
    }
    return s;
}

std::string golden_line(const Case& c, const OutputVector& y) {
    std::string line = c.name + " " + std::to_string(c.id) + " " + std::to_string(c.opts.seed) + " " +
                       format_value(c.opts.replications) + " " + format_value(c.opts.fidelity) + " " +
                       data::sha256_hex(format_point(c.x));
    for (std::size_t k = 0; k < y.size(); ++k) line += " " + hex_bits(y.at(k));
    return line;
}

std::vector<Outcome> run(std::string_view golden_text) {
    std::map<std::string, std::string> golden;
    std::istringstream in{std::string(golden_text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.front() == '#') continue;
        golden[line.substr(0, line.find(' '))] = line;
    }
    const std::vector<Case> all = cases();
    std::vector<Outcome> out(all.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < all.size(); ++i) {
        const Case& c = all[i];
        Outcome& o = out[i];
        o.name = c.name;
        const auto it = golden.find(c.name);
        if (it == golden.end()) {
            o.detail = "missing from golden file";
            continue;
        }
        const std::string got = golden_line(c, evaluate(c.id, c.x, c.opts).y);
        o.pass = got == it->second;
        if (!o.pass) o.detail = "expected: " + it->second + "\n  got:      " + got;
    }
    return out;
}

}  // namespace solar::check
