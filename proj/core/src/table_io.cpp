#include "sulfsim/table_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>

#include "sulfsim/errors.hpp"

namespace sulfsim {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw IoError("float formatting failed");
    return std::string(buf, ptr);
}

std::string format_time_label(double t) {
    if (std::isfinite(t) && t == std::floor(t) && std::abs(t) < 1e15) {
        return std::to_string(static_cast<int64_t>(t));
    }
    return format_double(t);
}

void write_table(const std::string& path, const std::vector<std::string>& header,
                 const std::vector<TableRow>& rows) {
    for (const auto& row : rows) {
        if (row.size() != header.size()) {
            throw IoError("ragged table row while writing " + path);
        }
    }
    std::string out;
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            if (row[i]) out += format_double(*row[i]);
        }
        out += '\n';
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open for writing: " + path);
    f.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!f) throw IoError("write failed: " + path);
}

} // namespace sulfsim
