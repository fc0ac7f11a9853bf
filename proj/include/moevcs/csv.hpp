// Small CSV/number formatting helpers. Doubles are written with the
// shortest round-trip representation, '.' decimal point, LF endings.

#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <vector>

namespace moevcs {

inline std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& text) {
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{}) {
        throw std::runtime_error("not a number: '" + text + "'");
    }
    return v;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace moevcs
