#include "fxwave/export.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>

#include "fxwave/textio.hpp"

namespace fxwave {

void write_prices_csv(std::ostream& out, const PriceSeries& prices, std::string_view header) {
  out << "DATE," << header << '\n';
  for (const auto& o : prices.observations) out << format_date(o.date) << ',' << format_real(o.price) << '\n';
}

void write_periodogram_csv(std::ostream& out, const Periodogram& p) {
  out << "frequency,power\n";
  for (std::size_t k = 0; k < p.power.size(); ++k)
    out << format_real(p.frequencies[k]) << ',' << format_real(p.power[k]) << '\n';
}

namespace {

template <typename Cell>
void write_matrix(std::ostream& out, const Scalogram& s, Cell cell) {
  out << "scale";
  for (std::size_t t = 0; t < s.length(); ++t) out << ',' << t;
  out << '\n';
  for (std::size_t i = 0; i < s.scales(); ++i) {
    out << format_real(s.grid.scales[i]);
    for (std::size_t t = 0; t < s.length(); ++t) out << ',' << cell(i, t);
    out << '\n';
  }
}

}  // namespace

void write_scalogram_csv(std::ostream& out, const Scalogram& s) {
  write_matrix(out, s, [&](std::size_t i, std::size_t t) { return format_real(s.coefficients(i, t)); });
}

void write_mask_csv(std::ostream& out, const Scalogram& s) {
  write_matrix(out, s, [&](std::size_t i, std::size_t t) { return s.valid_mask(i, t) ? '1' : '0'; });
}

void write_kurtosis_csv(std::ostream& out, const KurtosisCurve& curve) {
  out << "scale,kurtosis,n\n";
  for (std::size_t i = 0; i < curve.scales.size(); ++i)
    out << format_real(curve.scales[i]) << ',' << format_real(curve.kurtosis[i]) << ',' << curve.sample_counts[i]
        << '\n';
}

void write_pdf_csv(std::ostream& out, const ScalePdf& pdf) {
  out << "bin_left,bin_right,density\n";
  for (std::size_t b = 0; b < pdf.density.size(); ++b)
    out << format_real(pdf.bin_edges[b]) << ',' << format_real(pdf.bin_edges[b + 1]) << ','
        << format_real(pdf.density[b]) << '\n';
}

void write_chains_csv(std::ostream& out, std::span<const RidgeChain> chains, const ScaleGrid& grid) {
  out << "chain_id,scale,time,power\n";
  for (std::size_t c = 0; c < chains.size(); ++c)
    for (const auto& p : chains[c].points)
      out << c << ',' << format_real(grid.scales[p.scale_index]) << ',' << p.time << ',' << format_real(p.power)
          << '\n';
}

namespace {

// Perceptually ordered anchors (dark blue -> teal -> yellow).
constexpr std::array<std::array<double, 3>, 5> kPalette{{
    {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};

std::string colour(double u) {
  u = std::clamp(u, 0.0, 1.0);
  const double pos = u * static_cast<double>(kPalette.size() - 1);
  const auto i = std::min(static_cast<std::size_t>(pos), kPalette.size() - 2);
  const double f = pos - static_cast<double>(i);
  char buf[8];
  int rgb[3];
  for (int c = 0; c < 3; ++c)
    rgb[c] = static_cast<int>(std::lround(kPalette[i][c] + f * (kPalette[i + 1][c] - kPalette[i][c])));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

}  // namespace

void write_scalogram_svg(std::ostream& out, const Scalogram& s, std::size_t max_columns) {
  const std::size_t length = s.length(), rows = s.scales();
  const std::size_t bin = std::max<std::size_t>(1, (length + max_columns - 1) / std::max<std::size_t>(1, max_columns));
  const std::size_t cols = length == 0 ? 0 : (length + bin - 1) / bin;
  constexpr int kCellW = 1, kCellH = 4, kLeft = 50, kTop = 20, kBottom = 30;

  // Bin means over valid cells; NaN marks a bin with no valid cell.
  std::vector<double> value(rows * cols, std::nan(""));
  double vmax = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < cols; ++c) {
      double sum = 0.0;
      std::size_t n = 0;
      for (std::size_t t = c * bin; t < std::min(length, (c + 1) * bin); ++t) {
        if (!s.valid_mask(i, t)) continue;
        sum += s.squared(i, t);
        ++n;
      }
      if (n > 0) {
        value[i * cols + c] = sum / static_cast<double>(n);
        vmax = std::max(vmax, value[i * cols + c]);
      }
    }
  }

  const int width = kLeft + static_cast<int>(cols) * kCellW + 10;
  const int height = kTop + static_cast<int>(rows) * kCellH + kBottom;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  out << "<defs><pattern id=\"coi\" width=\"4\" height=\"4\" patternUnits=\"userSpaceOnUse\">"
         "<rect width=\"4\" height=\"4\" fill=\"#ffffff\"/>"
         "<path d=\"M0,4 L4,0\" stroke=\"#888888\" stroke-width=\"1\"/></pattern></defs>\n";
  out << "<text x=\"" << kLeft << "\" y=\"14\" font-size=\"12\" font-family=\"sans-serif\">"
      << (s.source_label.empty() ? "scalogram" : s.source_label) << " |W|^2</text>\n";

  for (std::size_t i = 0; i < rows; ++i) {
    const int y = kTop + static_cast<int>(i) * kCellH;
    // Merge horizontal runs of identical fill.
    std::size_t c = 0;
    while (c < cols) {
      const double v = value[i * cols + c];
      const std::string fill = std::isnan(v) ? "url(#coi)" : colour(vmax > 0.0 ? v / vmax : 0.0);
      std::size_t end = c + 1;
      while (end < cols) {
        const double w = value[i * cols + end];
        const std::string f = std::isnan(w) ? "url(#coi)" : colour(vmax > 0.0 ? w / vmax : 0.0);
        if (f != fill) break;
        ++end;
      }
      out << "<rect x=\"" << kLeft + static_cast<int>(c) * kCellW << "\" y=\"" << y << "\" width=\""
          << static_cast<int>(end - c) * kCellW << "\" height=\"" << kCellH << "\" fill=\"" << fill << "\"/>\n";
      c = end;
    }
  }

  // Scale ticks (downward increasing) and time ticks.
  for (std::size_t i = 0; i < rows; i += std::max<std::size_t>(1, rows / 8)) {
    out << "<text x=\"" << kLeft - 4 << "\" y=\"" << kTop + static_cast<int>(i) * kCellH + kCellH
        << "\" font-size=\"9\" text-anchor=\"end\" font-family=\"sans-serif\">" << format_real(s.grid.scales[i])
        << "</text>\n";
  }
  const int axis_y = kTop + static_cast<int>(rows) * kCellH + 12;
  for (std::size_t c = 0; c < cols; c += std::max<std::size_t>(1, cols / 8)) {
    out << "<text x=\"" << kLeft + static_cast<int>(c) * kCellW << "\" y=\"" << axis_y
        << "\" font-size=\"9\" font-family=\"sans-serif\">" << c * bin << "</text>\n";
  }
  out << "<text x=\"4\" y=\"" << kTop + 10 << "\" font-size=\"10\" font-family=\"sans-serif\">scale</text>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"" << height - 4
      << "\" font-size=\"10\" font-family=\"sans-serif\">time</text>\n";
  out << "</svg>\n";
}

}  // namespace fxwave
