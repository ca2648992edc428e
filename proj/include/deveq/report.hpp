#pragma once

#include <string>
#include <vector>

#include "deveq/trajectory.hpp"

namespace deveq {

inline constexpr const char* kLibraryVersion = "0.1.0";

// 17 significant digits: round-trips doubles exactly across readers.
std::string format_full(double v);

// FNV-1a over the raw config text, for provenance lines in every output.
std::string fnv1a_hex(const std::string& data);

// Write via temp file + rename in the target directory.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// Trajectory CSV: '#'-prefixed provenance lines, then
// t,coeff_0,...,coeff_{N-1} rows at full precision.
std::string trajectory_csv(const Trajectory& x,
                           const std::vector<std::string>& comments);
Trajectory read_trajectory_csv(const std::string& text);

// Single-vector CSV: provenance lines plus one comma-separated row.
std::string vector_csv(const HVec& v, const std::vector<std::string>& comments);
HVec read_vector_csv(const std::string& text);

// Generic small table writer.
std::string table_csv(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows,
                      const std::vector<std::string>& comments);

}  // namespace deveq
