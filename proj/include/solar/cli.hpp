#pragma once

#include "solar/core_model.hpp"

#include <iosfwd>
#include <string>
#include <vector>

// Command-line front end, callable in-process for tests.
namespace solar::cli {

inline constexpr int kUsageExit = 2;

/// Rows of whitespace-separated numbers; '#' starts a comment. Throws
/// UsageError on malformed numbers or rows of the wrong length.
std::vector<DesignPoint> parse_points(const std::string& text, int n);

/// `solar` with argv[1..]; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

void print_usage(std::ostream& out);
void print_instance(std::ostream& out, int id);

}  // namespace solar::cli
