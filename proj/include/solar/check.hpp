#pragma once

#include "solar/core_model.hpp"

#include <string>
#include <string_view>
#include <vector>

// Frozen evaluation matrix behind `solar -check`.
namespace solar::check {

struct Case {
    std::string name;
    int id = 0;
    DesignPoint x;
    EvalOptions opts;
};

std::vector<Case> cases();

/// Golden line: `case_id id seed rep fid sha256(x) v1_hex v2_hex ...`.
std::string golden_line(const Case& c, const OutputVector& y);

/// Space-separated shortest decimals, the bytes hashed into the golden line.
std::string format_point(const DesignPoint& x);

/// 16 hex digits of the IEEE-754 bit pattern.
std::string hex_bits(double v);

struct Outcome {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Evaluates every case and compares it with the golden text.
std::vector<Outcome> run(std::string_view golden_text);

}  // namespace solar::check
