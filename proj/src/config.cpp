#include "slipns/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "slipns/cmath_util.hpp"
#include "slipns/errors.hpp"

namespace slipns {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// parse a line into (key, value); returns false for comments/blanks
bool parse_line(const std::string& line, std::string& key, std::string& value) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') return false;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) fail(ErrorCode::invalid_argument, "config: missing '=' in line: " + line);
    key = trim(t.substr(0, eq));
    value = trim(t.substr(eq + 1));
    require(!key.empty(), ErrorCode::invalid_argument, "config: empty key in line: " + line);
    return true;
}

}  // namespace

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream is(path);
    require(is.good(), ErrorCode::io_error, "config: cannot open " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return from_string(ss.str());
}

RunConfig RunConfig::from_string(const std::string& text) {
    RunConfig cfg;
    std::string line;
    std::istringstream is(text);
    while (std::getline(is, line)) {
        std::string k, v;
        if (!trim(line).empty() || true) cfg.lines_.push_back(line);
        if (parse_line(line, k, v)) { /* validated */
        }
    }
    return cfg;
}

std::string RunConfig::serialize() const {
    std::string out;
    for (const auto& l : lines_) {
        out += l;
        out += '\n';
    }
    return out;
}

std::uint64_t RunConfig::hash() const {
    const std::string s = serialize();
    return fnv1a(s.data(), s.size());
}

const std::string* RunConfig::find(const std::string& key) const {
    const std::string* found = nullptr;
    static thread_local std::string value;
    for (const auto& l : lines_) {
        std::string k, v;
        if (parse_line(l, k, v) && k == key) {
            value = v;
            found = &value;
        }
    }
    return found;  // last assignment wins
}

bool RunConfig::has(const std::string& key) const { return find(key) != nullptr; }

std::string RunConfig::get_str(const std::string& key, const std::string& fallback) const {
    const std::string* v = find(key);
    return v ? *v : fallback;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    const std::string* v = find(key);
    if (!v) return fallback;
    char* end = nullptr;
    const double x = std::strtod(v->c_str(), &end);
    require(end && *end == '\0', ErrorCode::invalid_argument, "config: bad number for " + key);
    return x;
}

int RunConfig::get_int(const std::string& key, int fallback) const {
    const std::string* v = find(key);
    if (!v) return fallback;
    return static_cast<int>(std::strtol(v->c_str(), nullptr, 10));
}

std::uint64_t RunConfig::get_u64(const std::string& key, std::uint64_t fallback) const {
    const std::string* v = find(key);
    if (!v) return fallback;
    return std::strtoull(v->c_str(), nullptr, 10);
}

std::vector<double> RunConfig::get_list(const std::string& key, std::vector<double> fallback) const {
    const std::string* v = find(key);
    if (!v) return fallback;
    std::vector<double> out;
    std::string item;
    std::istringstream is(*v);
    while (std::getline(is, item, ',')) {
        const std::string t = trim(item);
        if (t.empty()) continue;
        char* end = nullptr;
        out.push_back(std::strtod(t.c_str(), &end));
        require(end && *end == '\0', ErrorCode::invalid_argument, "config: bad list entry for " + key);
    }
    require(!out.empty(), ErrorCode::invalid_argument, "config: empty list for " + key);
    return out;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    for (auto& l : lines_) {
        std::string k, v;
        if (parse_line(l, k, v) && k == key) {
            l = key + " = " + value;
            return;
        }
    }
    lines_.push_back(key + " = " + value);
}

}  // namespace slipns
