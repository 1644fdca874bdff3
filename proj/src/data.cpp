#include "solar/data.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace solar::data {
namespace detail {
struct Entry {
    std::string_view name;
    std::string_view bytes;
};
extern const Entry kEntries[];
}  // namespace detail

namespace {

const detail::Entry* find(std::string_view name) {
    for (const detail::Entry* e = detail::kEntries; !e->name.empty(); ++e) {
        const std::string_view n = e->name;
        if (n == name) return e;
        if (n.size() == name.size() + 5 && n.substr(0, 5) == "data/" && n.substr(5) == name) return e;
    }
    return nullptr;
}

}  // namespace

std::string_view file(std::string_view name) {
    const detail::Entry* e = find(name);
    if (!e) throw std::out_of_range("no embedded file " + std::string(name));
    return e->bytes;
}

bool has_file(std::string_view name) { return find(name) != nullptr; }

std::vector<std::string> file_names() {
    std::vector<std::string> out;
    for (const detail::Entry* e = detail::kEntries; !e->name.empty(); ++e) out.emplace_back(e->name);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<double>> parse_csv(std::string_view text) {
    std::vector<std::vector<double>> rows;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        const char c0 = line.front();
        if (!(std::isdigit(static_cast<unsigned char>(c0)) || c0 == '-' || c0 == '.' || c0 == '+')) continue;
        std::vector<double> row;
        std::size_t p = 0;
        while (p <= line.size()) {
            std::size_t q = line.find(',', p);
            if (q == std::string_view::npos) q = line.size();
            std::string_view cell = line.substr(p, q - p);
            while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
            if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
            double v = 0.0;
            auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
            if (res.ec != std::errc()) throw std::runtime_error("bad CSV cell '" + std::string(cell) + "'");
            row.push_back(v);
            p = q + 1;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string checksum() {
    std::string all;
    for (const auto& name : file_names()) {
        if (name.rfind("data/", 0) != 0) continue;
        all += name;
        all += '\n';
        all += file(name);
    }
    return sha256_hex(all);
}

}  // namespace solar::data
