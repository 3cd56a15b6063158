// Deterministic report emission: CSV tables (17 significant digits,
// scientific), self-contained SVG log-log plots, and a JSON run manifest.
#pragma once

#include <string>
#include <vector>

namespace tgsl {

// Scientific notation with 17 significant digits, '.' decimal separator.
std::string format_sci(double v);

// Writes a CSV file: header row, then data rows.  Throws IoError with the
// path in the message on failure.  Emission is deterministic: row order is
// the caller's, no timestamps or locale-dependent formatting.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Log-log scatter of (x, y) points with a fitted line y = exp(b) x^a drawn
// across the x-range; static SVG with no external references.
void write_svg_loglog(const std::string& path, const std::string& title,
                      const std::vector<double>& x, const std::vector<double>& y,
                      double slope, double intercept);

// Writes a JSON manifest from prepared key/value pairs (strings emitted
// verbatim as JSON strings, numbers formatted like the CSV values).
void write_manifest(const std::string& path,
                    const std::vector<std::pair<std::string, std::string>>& entries);

}  // namespace tgsl
