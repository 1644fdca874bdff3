#pragma once

#include "solar/core_model.hpp"

#include <string>
#include <vector>

namespace solar {

enum class OutputClass { Apriori, Deterministic, Stochastic };

struct OutputSpec {
    std::string name;  // "f1", "c3", ...
    OutputClass cls = OutputClass::Deterministic;
    bool linear = false;  // a-priori constraints only
    std::string description;
};

struct InstanceSpec {
    int id = 0;
    std::string name;     // "SOLAR1.1"
    std::string summary;  // one line for `solar -h`
    int n = 0;
    int p = 0;
    int m = 0;
    std::vector<VariableSpec> variables;
    std::vector<OutputSpec> outputs;  // flat order f1..fp, c1..cm
    bool multifidelity = false;       // Table 4 flag
    bool accepts_fidelity = false;    // whether -fid is accepted by the CLI
    DesignPoint x0;

    double window_hours = 24.0;
    double budget = 0.0;           // $, 0 when the instance has none
    double area_limit = 0.0;       // ha
    double parasitic_ratio = 0.0;  // fraction of the generated output
    std::string demand_file;       // relative to data/, empty when no demand

    int count_kind(VarKind k) const;
    int count_class(OutputClass c) const;
    /// A-priori constraints with the linear flag set.
    int count_linear() const;
    bool has_stochastic() const { return count_class(OutputClass::Stochastic) > 0; }
};

/// Frozen registry; throws UsageError for ids outside 1..10.
const InstanceSpec& instance_spec(int id);

struct AprioriResult {
    OutputVector y;  // a-priori (and analytic) entries filled, everything else FAIL
    bool satisfied = true;
};

/// Evaluates the closed-form outputs of an instance. Throws UsageError when
/// x has the wrong length.
AprioriResult apriori_eval(int id, const DesignPoint& x);

/// Index of an integer or categorical coordinate holding a non-integer value,
/// or -1 when every discrete coordinate is integral.
int non_integer_index(const InstanceSpec& spec, const DesignPoint& x);

/// SOLAR10 objective from a SOLAR6 output vector.
double penalty_objective(const OutputVector& y6);

/// Field surface pi x3^2 (x9^2 - x8^2) x7 / 180 in m2.
double field_surface(double tower_h, double angular_width, double r_min, double r_max);

}  // namespace solar
