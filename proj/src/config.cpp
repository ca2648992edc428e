#include "deveq/config.hpp"

#include <cstdlib>
#include <sstream>

#include "deveq/errors.hpp"
#include "deveq/report.hpp"

namespace deveq {

std::string RunConfig::get(const std::string& key) const {
    auto it = entries.find(key);
    if (it == entries.end()) throw ConfigError("missing config entry: " + key);
    return it->second;
}

std::string RunConfig::get(const std::string& key,
                           const std::string& fallback) const {
    auto it = entries.find(key);
    return it == entries.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
    auto it = entries.find(key);
    if (it == entries.end()) return fallback;
    char* end = nullptr;
    double v = std::strtod(it->second.c_str(), &end);
    if (end == it->second.c_str() || *end != '\0')
        throw ConfigError("bad number for config '" + key + "'");
    return v;
}

long RunConfig::get_long(const std::string& key, long fallback) const {
    double v = get_double(key, static_cast<double>(fallback));
    long n = static_cast<long>(v);
    if (static_cast<double>(n) != v)
        throw ConfigError("expected integer for config '" + key + "'");
    return n;
}

BlockMap RunConfig::block(const std::string& key) const {
    return parse_block(get(key));
}

void RunConfig::set(const std::string& key, const std::string& value) {
    entries[key] = value;
    raw += key + " = " + value + "\n";
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    cfg.raw = text;
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": empty key");
        cfg.entries[key] = val;
    }
    cfg.seed = static_cast<std::uint64_t>(cfg.get_long("seed", 0));
    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    return parse_config_text(read_file(path));
}

}  // namespace deveq
