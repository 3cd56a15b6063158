#include "csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <utility>

#include "errors.hpp"

// The manifest uses the vendored single-header JSON library.
#include <json.hpp>

namespace tgsl {

std::string format_sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  for (std::size_t i = 0; i < header.size(); ++i)
    f << (i ? "," : "") << header[i];
  f << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) f << (i ? "," : "") << row[i];
    f << "\n";
  }
  if (!f) throw IoError("write failed: " + path);
}

void write_svg_loglog(const std::string& path, const std::string& title,
                      const std::vector<double>& x, const std::vector<double>& y,
                      double slope, double intercept) {
  if (x.empty() || x.size() != y.size())
    throw InvalidArgumentError("svg plot: empty or mismatched data");
  double lx_min = 1e300, lx_max = -1e300, ly_min = 1e300, ly_max = -1e300;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0 && y[i] > 0.0))
      throw InvalidArgumentError("svg plot: log-log data must be positive");
    lx_min = std::min(lx_min, std::log10(x[i]));
    lx_max = std::max(lx_max, std::log10(x[i]));
    ly_min = std::min(ly_min, std::log10(y[i]));
    ly_max = std::max(ly_max, std::log10(y[i]));
  }
  const double padx = std::max(0.2, 0.1 * (lx_max - lx_min));
  const double pady = std::max(0.2, 0.1 * (ly_max - ly_min));
  lx_min -= padx;
  lx_max += padx;
  ly_min -= pady;
  ly_max += pady;
  const double W = 560, H = 420, mL = 70, mR = 20, mT = 40, mB = 50;
  auto X = [&](double lx) {
    return mL + (lx - lx_min) / (lx_max - lx_min) * (W - mL - mR);
  };
  auto Y = [&](double ly) {
    return H - mB - (ly - ly_min) / (ly_max - ly_min) * (H - mT - mB);
  };
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  char b[256];
  f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"560\" height=\"420\" "
       "viewBox=\"0 0 560 420\">\n";
  f << "<rect width=\"560\" height=\"420\" fill=\"white\"/>\n";
  std::snprintf(b, sizeof(b),
                "<text x=\"%.1f\" y=\"24\" font-family=\"monospace\" "
                "font-size=\"14\">%s</text>\n",
                mL, title.c_str());
  f << b;
  // Axes box and decade grid.
  std::snprintf(b, sizeof(b),
                "<rect x=\"%.1f\" y=\"%.1f\" width=\"%.1f\" height=\"%.1f\" "
                "fill=\"none\" stroke=\"black\"/>\n",
                mL, mT, W - mL - mR, H - mT - mB);
  f << b;
  for (int d = static_cast<int>(std::ceil(lx_min));
       d <= static_cast<int>(std::floor(lx_max)); ++d) {
    std::snprintf(b, sizeof(b),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"#ddd\"/><text x=\"%.1f\" y=\"%.1f\" "
                  "font-family=\"monospace\" font-size=\"11\" "
                  "text-anchor=\"middle\">1e%d</text>\n",
                  X(d), mT, X(d), H - mB, X(d), H - mB + 16.0, d);
    f << b;
  }
  for (int d = static_cast<int>(std::ceil(ly_min));
       d <= static_cast<int>(std::floor(ly_max)); ++d) {
    std::snprintf(b, sizeof(b),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"#ddd\"/><text x=\"%.1f\" y=\"%.1f\" "
                  "font-family=\"monospace\" font-size=\"11\" "
                  "text-anchor=\"end\">1e%d</text>\n",
                  mL, Y(d), W - mR, Y(d), mL - 6.0, Y(d) + 4.0, d);
    f << b;
  }
  // Fitted line y = exp(intercept) x^slope in natural logs.
  const double l10 = std::log(10.0);
  auto fit_ly = [&](double lx) { return (slope * lx * l10 + intercept) / l10; };
  std::snprintf(b, sizeof(b),
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
                "stroke=\"#c33\" stroke-width=\"1.5\"/>\n",
                X(lx_min), Y(fit_ly(lx_min)), X(lx_max), Y(fit_ly(lx_max)));
  f << b;
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::snprintf(b, sizeof(b),
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\" fill=\"#226\"/>\n",
                  X(std::log10(x[i])), Y(std::log10(y[i])));
    f << b;
  }
  std::snprintf(b, sizeof(b),
                "<text x=\"%.1f\" y=\"%.1f\" font-family=\"monospace\" "
                "font-size=\"12\">slope %.4f</text>\n",
                W - mR - 120.0, mT + 18.0, slope);
  f << b;
  f << "</svg>\n";
  if (!f) throw IoError("write failed: " + path);
}

void write_manifest(
    const std::string& path,
    const std::vector<std::pair<std::string, std::string>>& entries) {
  nlohmann::ordered_json j;
  for (const auto& [k, v] : entries) j[k] = v;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << j.dump(2) << "\n";
  if (!f) throw IoError("write failed: " + path);
}

}  // namespace tgsl
