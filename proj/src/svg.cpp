#include <algorithm>
#include <cmath>
#include <limits>

#include "ncsurf/spectral.hpp"

namespace ncsurf {

namespace {

constexpr double kPanelW = 420, kPanelH = 300, kMargin = 50;
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  double span() const { return hi > lo ? hi - lo : 1.0; }
};

void panel(std::ostream& os, double x0, const char* ylabel, const std::vector<SweepEntry>& entries, bool gaps) {
  Range xr, yr;
  for (const auto& e : entries) {
    if (!e.report) continue;
    const auto& vals = gaps ? e.report->gaps : e.report->eigenvalues;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      xr.add(static_cast<double>(i + 1));
      yr.add(vals[i]);
    }
  }
  if (xr.lo > xr.hi) xr = Range{0, 1};
  if (yr.lo > yr.hi) yr = Range{0, 1};
  const double left = x0 + kMargin, bottom = kMargin + kPanelH;
  os << "<rect x=\"" << left << "\" y=\"" << kMargin << "\" width=\"" << kPanelW << "\" height=\"" << kPanelH
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << left + kPanelW / 2 << "\" y=\"" << bottom + 35 << "\" text-anchor=\"middle\">i</text>\n";
  os << "<text x=\"" << left - 35 << "\" y=\"" << kMargin + kPanelH / 2 << "\" text-anchor=\"middle\">" << ylabel << "</text>\n";
  os << "<text x=\"" << left << "\" y=\"" << bottom + 15 << "\" font-size=\"10\">" << xr.lo << "</text>\n";
  os << "<text x=\"" << left + kPanelW << "\" y=\"" << bottom + 15 << "\" font-size=\"10\" text-anchor=\"end\">" << xr.hi << "</text>\n";
  os << "<text x=\"" << left - 4 << "\" y=\"" << bottom << "\" font-size=\"10\" text-anchor=\"end\">" << format_double(yr.lo).substr(0, 8) << "</text>\n";
  os << "<text x=\"" << left - 4 << "\" y=\"" << kMargin + 10 << "\" font-size=\"10\" text-anchor=\"end\">" << format_double(yr.hi).substr(0, 8) << "</text>\n";
  std::size_t series = 0;
  for (const auto& e : entries) {
    const char* color = kColors[series++ % std::size(kColors)];
    if (!e.report) continue;
    const auto& vals = gaps ? e.report->gaps : e.report->eigenvalues;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      double px = left + (static_cast<double>(i + 1) - xr.lo) / xr.span() * kPanelW;
      double py = bottom - (vals[i] - yr.lo) / yr.span() * kPanelH;
      os << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
  }
}

}  // namespace

void write_sweep_svg(std::ostream& os, const std::vector<SweepEntry>& entries) {
  const double width = 2 * (kPanelW + 2 * kMargin), height = kPanelH + 2 * kMargin + 20 * (entries.size() + 1);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  panel(os, 0, "lambda", entries, false);
  panel(os, kPanelW + 2 * kMargin, "gap", entries, true);
  std::size_t series = 0;
  for (const auto& e : entries) {
    const char* color = kColors[series % std::size(kColors)];
    os << "<text x=\"" << kMargin << "\" y=\"" << kPanelH + 2 * kMargin + 20 * (series + 1) << "\" fill=\"" << color
       << "\">mu = " << e.mu << (e.report ? "" : " (failed)") << "</text>\n";
    ++series;
  }
  os << "</svg>\n";
}

}  // namespace ncsurf
