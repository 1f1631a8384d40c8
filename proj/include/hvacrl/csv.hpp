#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hvacrl::csv {

/// Shortest round-trip decimal form of a double.
inline std::string fmt(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("csv: double format failed");
    return std::string(buf, ptr);
}

inline std::string fmt(int v) { return std::to_string(v); }
inline std::string fmt(long v) { return std::to_string(v); }
inline std::string fmt(std::size_t v) { return std::to_string(v); }
inline std::string fmt(const std::string& v) { return v; }
inline std::string fmt(const char* v) { return v; }

class Writer {
public:
    explicit Writer(const std::string& path) : out_(path, std::ios::trunc) {
        if (!out_) throw std::runtime_error("csv: cannot open " + path + " for writing");
        path_ = path;
    }

    template <typename... Ts>
    void row(const Ts&... fields) {
        std::string line;
        std::size_t i = 0;
        ((line += fmt(fields), line += (++i < sizeof...(Ts) ? "," : "")), ...);
        out_ << line << '\n';
        if (!out_) throw std::runtime_error("csv: write failed on " + path_);
    }

private:
    std::ofstream out_;
    std::string path_;
};

/// Splits one CSV line on commas; no quoting (none of our formats need it).
inline std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

inline double to_double(const std::string& s) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("csv: bad numeric field '" + s + "'");
    }
}

inline int to_int(const std::string& s) {
    try {
        std::size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("csv: bad integer field '" + s + "'");
    }
}

} // namespace hvacrl::csv
