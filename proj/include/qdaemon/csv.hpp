// csv.hpp — deterministic CSV emission (RFC-4180-style quoting) with
// round-trip-exact float formatting.

#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "qdaemon/common.hpp"

namespace qdaemon {

/// Shortest round-trip decimal form of a double; deterministic across runs.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // prefer the shortest representation that round-trips
    for (int prec = 1; prec <= 16; ++prec) {
        char probe[40];
        std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
        if (std::strtod(probe, nullptr) == v) return probe;
    }
    return buf;
}

inline std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        out += c;
    }
    out += "\"";
    return out;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
        if (!out_) throw ConfigError("cannot open output file: " + path);
    }

    void row(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << csv_quote(fields[i]);
        }
        out_ << '\n';
    }

    /// Convenience: mixed text/number row.
    class RowBuilder {
    public:
        explicit RowBuilder(CsvWriter& w) : w_(w) {}
        RowBuilder& col(const std::string& s) { fields_.push_back(s); return *this; }
        RowBuilder& col(double v) { fields_.push_back(format_double(v)); return *this; }
        RowBuilder& col(int v) { fields_.push_back(std::to_string(v)); return *this; }
        ~RowBuilder() { w_.row(fields_); }
    private:
        CsvWriter& w_;
        std::vector<std::string> fields_;
    };

    RowBuilder begin_row() { return RowBuilder(*this); }

private:
    std::ofstream out_;
};

} // namespace qdaemon
