#include "relscan/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace relscan {

namespace {

constexpr int kWidth = 880;
constexpr int kHeight = 540;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 24;
constexpr int kMarginTop = 24;
constexpr int kMarginBottom = 56;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                          "#bcbd22", "#17becf"};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

double nice_step(double span) {
  if (span <= 0.0) return 1.0;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  double step = 10.0;
  if (frac <= 1.0) step = 1.0;
  else if (frac <= 2.0) step = 2.0;
  else if (frac <= 5.0) step = 5.0;
  return step * mag;
}

}  // namespace

std::string plot_ecdf_svg(const std::vector<EcdfCurve>& curves) {
  if (curves.empty()) {
    throw EmptySample("plot_ecdf_svg: no curves");
  }
  double x_max = 0.0;
  for (const EcdfCurve& c : curves) {
    if (c.ecdf == nullptr || c.ecdf->size() == 0) {
      throw EmptySample("plot_ecdf_svg: empty curve `" + c.label + "`");
    }
    x_max = std::max(x_max, c.ecdf->max());
  }
  if (x_max <= 0.0) x_max = 1.0;
  const double x_step = nice_step(x_max);
  x_max = std::ceil(x_max / x_step) * x_step;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  const auto px = [&](double x) {
    return kMarginLeft + plot_w * (x / x_max);
  };
  const auto py = [&](double f) {
    return kMarginTop + plot_h * (1.0 - f);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";

  // Axes and grid.
  svg << "<g stroke=\"#444444\" stroke-width=\"1\">\n";
  svg << "<line x1=\"" << fmt(px(0)) << "\" y1=\"" << fmt(py(0)) << "\" x2=\""
      << fmt(px(x_max)) << "\" y2=\"" << fmt(py(0)) << "\"/>\n";
  svg << "<line x1=\"" << fmt(px(0)) << "\" y1=\"" << fmt(py(0)) << "\" x2=\""
      << fmt(px(0)) << "\" y2=\"" << fmt(py(1)) << "\"/>\n";
  svg << "</g>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#222222\">\n";
  for (double x = 0.0; x <= x_max + 1e-9; x += x_step) {
    svg << "<line x1=\"" << fmt(px(x)) << "\" y1=\"" << fmt(py(0)) << "\" x2=\""
        << fmt(px(x)) << "\" y2=\"" << fmt(py(0) + 5) << "\" stroke=\"#444444\"/>\n";
    svg << "<text x=\"" << fmt(px(x)) << "\" y=\"" << fmt(py(0) + 20)
        << "\" text-anchor=\"middle\">" << fmt(x) << "</text>\n";
  }
  for (double f = 0.0; f <= 1.0 + 1e-9; f += 0.2) {
    svg << "<line x1=\"" << fmt(px(0) - 5) << "\" y1=\"" << fmt(py(f))
        << "\" x2=\"" << fmt(px(0)) << "\" y2=\"" << fmt(py(f))
        << "\" stroke=\"#444444\"/>\n";
    svg << "<text x=\"" << fmt(px(0) - 9) << "\" y=\"" << fmt(py(f) + 4)
        << "\" text-anchor=\"end\">" << fmt(f) << "</text>\n";
  }
  svg << "<text x=\"" << fmt(kMarginLeft + plot_w / 2) << "\" y=\""
      << fmt(kHeight - 14) << "\" text-anchor=\"middle\">distance [m]</text>\n";
  svg << "<text x=\"16\" y=\"" << fmt(kMarginTop + plot_h / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << fmt(kMarginTop + plot_h / 2)
      << ")\">cumulative fraction</text>\n";
  svg << "</g>\n";

  // Step curves.
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const Ecdf& e = *curves[i].ecdf;
    const std::vector<double>& vals = e.sorted_values();
    std::ostringstream pts;
    pts << fmt(px(std::min(vals.front(), x_max))) << "," << fmt(py(0.0));
    double prev_f = 0.0;
    for (std::size_t k = 0; k < vals.size();) {
      std::size_t j = k;
      while (j < vals.size() && vals[j] == vals[k]) ++j;
      const double f = static_cast<double>(j) / static_cast<double>(vals.size());
      pts << " " << fmt(px(vals[k])) << "," << fmt(py(prev_f));
      pts << " " << fmt(px(vals[k])) << "," << fmt(py(f));
      prev_f = f;
      k = j;
    }
    pts << " " << fmt(px(x_max)) << "," << fmt(py(1.0));
    svg << "<polyline fill=\"none\" stroke=\""
        << kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))]
        << "\" stroke-width=\"1.6\" points=\"" << pts.str() << "\"/>\n";
  }

  // Legend.
  svg << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#222222\">\n";
  const double lx = kMarginLeft + 14;
  double ly = kMarginTop + 10;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    svg << "<line x1=\"" << fmt(lx) << "\" y1=\"" << fmt(ly) << "\" x2=\""
        << fmt(lx + 22) << "\" y2=\"" << fmt(ly) << "\" stroke=\""
        << kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))]
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text x=\"" << fmt(lx + 28) << "\" y=\"" << fmt(ly + 4) << "\">"
        << curves[i].label << "</text>\n";
    ly += 17.0;
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace relscan
