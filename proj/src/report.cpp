#include "deveq/report.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "deveq/blocktext.hpp"
#include "deveq/errors.hpp"

namespace deveq {

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << content;
        if (!out) throw Error("short write to " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

static void append_comments(std::ostringstream& os,
                            const std::vector<std::string>& comments) {
    for (const std::string& c : comments) os << "# " << c << "\n";
}

std::string trajectory_csv(const Trajectory& x,
                           const std::vector<std::string>& comments) {
    std::ostringstream os;
    append_comments(os, comments);
    os << "t";
    for (std::size_t j = 0; j < x.dim(); ++j) os << ",coeff_" << j;
    os << "\n";
    for (std::size_t m = 0; m < x.points(); ++m) {
        os << format_full(x.times[m]);
        for (std::size_t j = 0; j < x.dim(); ++j)
            os << "," << format_full(x.values[m][j]);
        os << "\n";
    }
    return os.str();
}

namespace {

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        lines.push_back(t);
    }
    return lines;
}

}  // namespace

Trajectory read_trajectory_csv(const std::string& text) {
    std::vector<std::string> lines = data_lines(text);
    if (lines.size() < 2) throw ConfigError("trajectory csv: no data rows");
    if (lines.front().rfind("t,", 0) != 0 && lines.front() != "t")
        throw ConfigError("trajectory csv: missing header row");
    std::vector<double> times;
    std::vector<HVec> values;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::vector<double> row = parse_double_list(lines[i]);
        if (row.empty()) throw ConfigError("trajectory csv: empty row");
        times.push_back(row.front());
        values.emplace_back(row.begin() + 1, row.end());
    }
    return make_trajectory(std::move(times), std::move(values));
}

std::string vector_csv(const HVec& v, const std::vector<std::string>& comments) {
    std::ostringstream os;
    append_comments(os, comments);
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (j) os << ",";
        os << format_full(v[j]);
    }
    os << "\n";
    return os.str();
}

HVec read_vector_csv(const std::string& text) {
    std::vector<std::string> lines = data_lines(text);
    if (lines.size() != 1) throw ConfigError("vector csv: expected one data row");
    return parse_double_list(lines.front());
}

std::string table_csv(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows,
                      const std::vector<std::string>& comments) {
    std::ostringstream os;
    append_comments(os, comments);
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (j) os << ",";
        os << columns[j];
    }
    os << "\n";
    for (const auto& row : rows) {
        if (row.size() != columns.size())
            throw ParameterError("table_csv: row width mismatch");
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) os << ",";
            os << format_full(row[j]);
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace deveq
