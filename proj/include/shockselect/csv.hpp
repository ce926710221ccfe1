#pragma once

#include <array>
#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace shockselect {

// 17 significant digits round-trip IEEE doubles exactly, so emitted files are
// byte-comparable across runs and platforms.
inline std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    if (ec != std::errc{}) throw std::runtime_error("cannot format floating-point value");
    return std::string(buf, p);
}

inline std::string csv_cell(double v) { return format_double(v); }
inline std::string csv_cell(int v) { return std::to_string(v); }
inline std::string csv_cell(long v) { return std::to_string(v); }
inline std::string csv_cell(std::size_t v) { return std::to_string(v); }
inline std::string csv_cell(bool v) { return v ? "1" : "0"; }
inline std::string csv_cell(const char* s) { return s; }
inline std::string csv_cell(const std::string& s) { return s; }

// Fixed header, '\n' line endings, no quoting: cells are numbers or plain words.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
        : out_(path, std::ios::binary), columns_(header.size()) {
        if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
        write_line(header);
    }

    template <class... Ts>
    void row(const Ts&... values) {
        std::array<std::string, sizeof...(Ts)> cells{csv_cell(values)...};
        if (cells.size() != columns_)
            throw std::logic_error("csv row width does not match the header");
        write_line(std::vector<std::string>(cells.begin(), cells.end()));
    }

    void row_cells(const std::vector<std::string>& cells) {
        if (cells.size() != columns_)
            throw std::logic_error("csv row width does not match the header");
        write_line(cells);
    }

    void close() {
        out_.close();
        if (out_.fail()) throw std::runtime_error("failed to flush csv output");
    }

private:
    void write_line(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
        if (!out_) throw std::runtime_error("failed to write csv row");
    }

    std::ofstream out_;
    std::size_t columns_;
};

} // namespace shockselect
