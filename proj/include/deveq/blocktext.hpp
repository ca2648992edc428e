#pragma once

#include <map>
#include <string>
#include <vector>

namespace deveq {

// Parser for the plain-text config blocks used throughout the CLI:
//   name = {key: value, key: value, ...}
// A comma-separated segment without a colon continues the previous value,
// so list-valued entries (alphas: 1,0.5,0.25) survive the split.
using BlockMap = std::map<std::string, std::string>;

std::string trim(const std::string& s);

// Parses the body between braces (braces optional). Throws ConfigError on
// malformed input.
BlockMap parse_block(const std::string& text);

std::vector<double> parse_double_list(const std::string& text);

double block_get_double(const BlockMap& m, const std::string& key);
double block_get_double(const BlockMap& m, const std::string& key, double fallback);
long block_get_long(const BlockMap& m, const std::string& key);
long block_get_long(const BlockMap& m, const std::string& key, long fallback);
std::string block_get(const BlockMap& m, const std::string& key);
std::string block_get(const BlockMap& m, const std::string& key,
                      const std::string& fallback);

}  // namespace deveq
