#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace solar {

/// Failure sentinel carried by any output the simulator could not produce.
inline constexpr double kFail = 1.0e20;

inline bool is_fail(double v) { return v == kFail; }

/// max(0, c), keeping the sentinel intact.
inline double violation(double c) {
    if (c == kFail) return kFail;
    return c > 0.0 ? c : 0.0;
}

/// Thrown for malformed requests: wrong arity, bad option values, unknown ids.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class VarKind { Continuous, Integer, Categorical };

struct VariableSpec {
    int index = 0;  // 1-based
    VarKind kind = VarKind::Continuous;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    std::string unit;
    std::string symbol;
    std::string description;
};

using DesignPoint = std::vector<double>;

struct OutputVector {
    std::vector<double> objectives;
    std::vector<double> constraints;
    bool cnt_eval = false;

    std::size_t size() const { return objectives.size() + constraints.size(); }
    /// Flat layout (f1..fp, c1..cm).
    std::vector<double> flat() const;
    /// Element at flat position k (0-based).
    double at(std::size_t k) const;
    double& at(std::size_t k);

    friend bool operator==(const OutputVector&, const OutputVector&) = default;
};

/// Output vector of p objectives and m constraints with every entry FAIL.
OutputVector failed_outputs(int p, int m);

struct EvalOptions {
    std::uint64_t seed = 0;
    /// Integer count >= 1, or a probability in (0,1) selecting the Gauss rule.
    double replications = 1.0;
    double fidelity = 1.0;

    bool gauss_rule() const { return replications > 0.0 && replications < 1.0; }
    /// Throws UsageError when the triple is malformed.
    void validate() const;
};

/// Shortest decimal that parses back to the same double; scientific
/// notation once |v| >= 1e6.
std::string format_value(double v);
/// Locale-independent parse; throws UsageError on junk.
double parse_value(const std::string& token);

std::string format_outputs(const OutputVector& y);
/// Inverse of format_outputs for a known (p, m).
OutputVector parse_outputs(const std::string& line, int p, int m, bool cnt_eval);

}  // namespace solar
