#include "deveq/blocktext.hpp"

#include <cstdlib>
#include <sstream>

#include "deveq/errors.hpp"

namespace deveq {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

BlockMap parse_block(const std::string& text) {
    std::string body = trim(text);
    if (!body.empty() && body.front() == '{') {
        if (body.back() != '}')
            throw ConfigError("unterminated block: " + text);
        body = body.substr(1, body.size() - 2);
    }
    BlockMap out;
    std::string last_key;
    std::stringstream ss(body);
    std::string seg;
    while (std::getline(ss, seg, ',')) {
        std::string t = trim(seg);
        if (t.empty()) continue;
        std::size_t colon = t.find(':');
        if (colon == std::string::npos) {
            if (last_key.empty())
                throw ConfigError("block entry without key: " + t);
            out[last_key] += "," + t;
            continue;
        }
        std::string key = trim(t.substr(0, colon));
        std::string val = trim(t.substr(colon + 1));
        if (key.empty()) throw ConfigError("empty key in block: " + text);
        out[key] = val;
        last_key = key;
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string seg;
    while (std::getline(ss, seg, ',')) {
        std::string t = trim(seg);
        if (t.empty()) continue;
        char* end = nullptr;
        double v = std::strtod(t.c_str(), &end);
        if (end == t.c_str() || *end != '\0')
            throw ConfigError("bad number in list: '" + t + "'");
        out.push_back(v);
    }
    return out;
}

static const std::string& block_fetch(const BlockMap& m, const std::string& key) {
    auto it = m.find(key);
    if (it == m.end()) throw ConfigError("missing block entry: " + key);
    return it->second;
}

double block_get_double(const BlockMap& m, const std::string& key) {
    const std::string& s = block_fetch(m, key);
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0')
        throw ConfigError("bad number for '" + key + "': " + s);
    return v;
}

double block_get_double(const BlockMap& m, const std::string& key, double fallback) {
    return m.count(key) ? block_get_double(m, key) : fallback;
}

long block_get_long(const BlockMap& m, const std::string& key) {
    double v = block_get_double(m, key);
    long n = static_cast<long>(v);
    if (static_cast<double>(n) != v)
        throw ConfigError("expected integer for '" + key + "'");
    return n;
}

long block_get_long(const BlockMap& m, const std::string& key, long fallback) {
    return m.count(key) ? block_get_long(m, key) : fallback;
}

std::string block_get(const BlockMap& m, const std::string& key) {
    return block_fetch(m, key);
}

std::string block_get(const BlockMap& m, const std::string& key,
                      const std::string& fallback) {
    return m.count(key) ? m.at(key) : fallback;
}

}  // namespace deveq
