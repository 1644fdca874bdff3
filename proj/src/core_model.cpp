#include "solar/core_model.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace solar {

std::vector<double> OutputVector::flat() const {
    std::vector<double> out(objectives);
    out.insert(out.end(), constraints.begin(), constraints.end());
    return out;
}

double OutputVector::at(std::size_t k) const {
    return k < objectives.size() ? objectives[k] : constraints.at(k - objectives.size());
}

double& OutputVector::at(std::size_t k) {
    return k < objectives.size() ? objectives[k] : constraints.at(k - objectives.size());
}

OutputVector failed_outputs(int p, int m) {
    OutputVector y;
    y.objectives.assign(static_cast<std::size_t>(p), kFail);
    y.constraints.assign(static_cast<std::size_t>(m), kFail);
    y.cnt_eval = false;
    return y;
}

void EvalOptions::validate() const {
    if (!(fidelity >= 0.0 && fidelity <= 1.0)) throw UsageError("fidelity must lie in [0,1]");
    if (gauss_rule()) return;
    if (!(replications >= 1.0) || std::floor(replications) != replications || replications > 5.0e4)
        throw UsageError("rep must be a positive integer (at most 50000) or a real in (0,1)");
}

std::string format_value(double v) {
    char buf[64];
    // Both forms are shortest round-trip; the plain overload picks fixed or
    // exponent notation by length.
    const auto res = std::fabs(v) >= 1.0e6 ? std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific)
                                           : std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_value(const std::string& token) {
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (first != last && *first == '+') ++first;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) throw UsageError("malformed number: '" + token + "'");
    return v;
}

std::string format_outputs(const OutputVector& y) {
    std::string line;
    for (std::size_t k = 0; k < y.size(); ++k) {
        if (k) line += ' ';
        line += format_value(y.at(k));
    }
    return line;
}

OutputVector parse_outputs(const std::string& line, int p, int m, bool cnt_eval) {
    std::istringstream in(line);
    OutputVector y;
    y.cnt_eval = cnt_eval;
    std::string tok;
    for (int i = 0; i < p + m; ++i) {
        if (!(in >> tok)) throw UsageError("output line too short");
        (i < p ? y.objectives : y.constraints).push_back(parse_value(tok));
    }
    return y;
}

}  // namespace solar
