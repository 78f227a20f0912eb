#pragma once

#include <optional>
#include <string>
#include <vector>

namespace sulfsim {

/// One CSV cell; an empty optional is written as an empty field.
using TableCell = std::optional<double>;
using TableRow = std::vector<TableCell>;

/// Shortest decimal form that parses back to the identical binary value
/// (up to 17 significant digits).
std::string format_double(double v);

/// Filename-friendly time label: integral times print without a decimal part.
std::string format_time_label(double t);

/// Writes a comma-separated table with LF line endings and round-trip exact
/// floats; byte output is a pure function of the inputs. Throws IoError.
void write_table(const std::string& path, const std::vector<std::string>& header,
                 const std::vector<TableRow>& rows);

} // namespace sulfsim
