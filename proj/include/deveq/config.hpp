#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "deveq/blocktext.hpp"

namespace deveq {

// Plain-text experiment config: one `key = value` per line, '#' comments,
// block values in single-line braces. The raw text is kept verbatim and
// echoed (with its hash) into every output file.
struct RunConfig {
    std::string raw;
    std::map<std::string, std::string> entries;
    std::uint64_t seed = 0;

    bool has(const std::string& key) const { return entries.count(key) != 0; }
    std::string get(const std::string& key) const;
    std::string get(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
    BlockMap block(const std::string& key) const;

    void set(const std::string& key, const std::string& value);
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

}  // namespace deveq
