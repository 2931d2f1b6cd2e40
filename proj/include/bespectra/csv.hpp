#pragma once

// Minimal CSV output with a fixed 12-significant-digit number format.

#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bespectra {

inline std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(std::ostream& os, std::vector<std::string> columns) : os_(os), width_(columns.size()) {
        write_cells(columns);
    }

    void row(std::initializer_list<double> values) { row(std::vector<double>(values)); }
    void row(const std::vector<double>& values) {
        if (values.size() != width_)
            throw std::invalid_argument("csv row has " + std::to_string(values.size()) + " cells, expected " +
                                        std::to_string(width_));
        std::vector<std::string> cells;
        cells.reserve(values.size());
        for (double v : values) cells.push_back(format_number(v));
        write_cells(cells);
    }

    std::size_t width() const { return width_; }

private:
    void write_cells(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
        os_ << '\n';
    }

    std::ostream& os_;
    std::size_t width_;
};

} // namespace bespectra
