#pragma once

// Deterministic CSV / signal-file I/O for the CLI. Floats are serialized
// with 12 significant digits; files are written to a temp path and renamed.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "logbern/errors.hpp"

namespace logbern {

inline std::string format_value(double v) {
    if (std::isnan(v))
        return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw DataError("cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out)
            throw DataError("write to '" + tmp.string() + "' failed");
    }
    fs::rename(tmp, path);
}

/// CSV table with a fixed column order.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::string to_string() const {
        std::ostringstream os;
        for (std::size_t c = 0; c < columns.size(); ++c)
            os << (c ? "," : "") << columns[c];
        os << '\n';
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c)
                os << (c ? "," : "") << format_value(row[c]);
            os << '\n';
        }
        return os.str();
    }

    void write(const std::filesystem::path& path) const { atomic_write_text(path, to_string()); }
};

/// Parsed sample file. Two schemas:
///   # logbern-signal n=<n> mu=<mu>   with rows  k,y      (k contiguous 0..n)
///   # logbern-function n=<n>         with rows  x,f      (x_i = i/n)
struct SignalFileData {
    enum class Kind { Signal, FunctionSamples };
    Kind kind = Kind::Signal;
    int n = 0;
    std::optional<double> mu;
    std::vector<double> values; // length n+1, indexed by node
};

namespace detail {

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    return parts;
}

inline std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    std::size_t e = s.find_last_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    return s.substr(b, e - b + 1);
}

} // namespace detail

inline SignalFileData read_signal_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open input file '" + path.string() + "'");
    std::string header;
    if (!std::getline(in, header))
        throw DataError("input file '" + path.string() + "' is empty");
    header = detail::trimmed(header);

    SignalFileData data;
    if (header.rfind("# logbern-signal", 0) == 0)
        data.kind = SignalFileData::Kind::Signal;
    else if (header.rfind("# logbern-function", 0) == 0)
        data.kind = SignalFileData::Kind::FunctionSamples;
    else
        throw DataError("unrecognized header line: '" + header + "'");

    data.n = -1;
    for (const auto& tok : detail::split(header, ' ')) {
        if (tok.rfind("n=", 0) == 0)
            data.n = std::stoi(tok.substr(2));
        else if (tok.rfind("mu=", 0) == 0)
            data.mu = std::stod(tok.substr(3));
    }
    if (data.n < 1)
        throw DataError("header must declare n>=1");

    std::string line;
    if (!std::getline(in, line))
        throw DataError("missing column header row");

    data.values.assign(static_cast<std::size_t>(data.n) + 1,
                       std::numeric_limits<double>::quiet_NaN());
    int row_index = 0;
    while (std::getline(in, line)) {
        line = detail::trimmed(line);
        if (line.empty())
            continue;
        const auto parts = detail::split(line, ',');
        if (parts.size() != 2)
            throw DataError("row " + std::to_string(row_index) + ": expected two columns");
        double key = 0.0, value = 0.0;
        try {
            key = std::stod(parts[0]);
            value = std::stod(parts[1]);
        } catch (const std::exception&) {
            throw DataError("row " + std::to_string(row_index) + ": cannot parse '" + line + "'");
        }
        int k = 0;
        if (data.kind == SignalFileData::Kind::Signal) {
            k = static_cast<int>(std::lround(key));
            if (std::abs(key - k) > 1e-9)
                throw DataError("row " + std::to_string(row_index) + ": index must be an integer");
        } else {
            k = static_cast<int>(std::lround(key * data.n));
            if (std::abs(key - static_cast<double>(k) / data.n) > 1e-9)
                throw DataError("row " + std::to_string(row_index) +
                                ": x is not a node of the declared grid");
        }
        if (k < 0 || k > data.n)
            throw DataError("row " + std::to_string(row_index) + ": node index out of range");
        if (!std::isfinite(value))
            throw DataError("row " + std::to_string(row_index) + ": value is not finite");
        data.values[static_cast<std::size_t>(k)] = value;
        ++row_index;
    }
    for (int k = 0; k <= data.n; ++k)
        if (std::isnan(data.values[static_cast<std::size_t>(k)]))
            throw DataError("missing row for node " + std::to_string(k) +
                            "; indices must be contiguous 0..n");
    return data;
}

inline void write_signal_file(const std::filesystem::path& path, int n,
                              std::optional<double> mu, const std::vector<double>& values) {
    std::ostringstream os;
    os << "# logbern-signal n=" << n;
    if (mu)
        os << " mu=" << format_value(*mu);
    os << "\nk,y\n";
    for (std::size_t k = 0; k < values.size(); ++k)
        os << k << ',' << format_value(values[k]) << '\n';
    atomic_write_text(path, os.str());
}

} // namespace logbern
