#include "korobov/caps.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>

#include "korobov/errors.hpp"

namespace korobov {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

std::uint64_t parse_count(std::string_view key, std::string_view value) {
    // Accept both 1000000 and 1e6.
    std::string buf(value);
    char* end = nullptr;
    double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || !std::isfinite(v) || v < 1 || v > 1.8e19) {
        throw DomainError("cap '" + std::string(key) + "' needs a positive count, got '" + buf + "'");
    }
    return static_cast<std::uint64_t>(v);
}

}  // namespace

void Caps::apply_overrides(std::string_view text) {
    while (!text.empty()) {
        auto comma = text.find(',');
        std::string_view item = trim(text.substr(0, comma));
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            throw DomainError("cap override '" + std::string(item) + "' is not key=value");
        }
        auto key = trim(item.substr(0, eq));
        auto value = parse_count(key, trim(item.substr(eq + 1)));
        if (key == "frontier") frontier = value;
        else if (key == "nodes") nodes = value;
        else if (key == "terms") terms = value;
        else if (key == "ranks") ranks = value;
        else if (key == "box") box = value;
        else if (key == "points") points = value;
        else if (key == "exact_points") exact_points = value;
        else if (key == "search_nodes") search_nodes = value;
        else throw DomainError("unknown cap '" + std::string(key) + "'");
    }
}

Caps Caps::from_environment() {
    Caps caps;
    if (const char* env = std::getenv("KOROBOV_TRACT_CAPS")) caps.apply_overrides(env);
    return caps;
}

}  // namespace korobov
