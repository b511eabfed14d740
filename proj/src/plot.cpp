#include "rgh/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace rgh {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 540.0;
constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 30.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 60.0;

struct LogScale {
  double lo, hi, pix_lo, pix_hi;
  double operator()(double v) const {
    const double t = (std::log10(v) - lo) / (hi - lo);
    return pix_lo + t * (pix_hi - pix_lo);
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

void polyline(std::ostream& out, const std::vector<std::pair<double, double>>& pts,
              const LogScale& x, const LogScale& y, const char* stroke,
              const char* dash) {
  out << "  <polyline fill=\"none\" stroke=\"" << stroke
      << "\" stroke-width=\"1.5\"";
  if (dash) out << " stroke-dasharray=\"" << dash << "\"";
  out << " points=\"";
  for (const auto& [px, py] : pts) {
    out << fmt(x(px)) << ',' << fmt(y(py)) << ' ';
  }
  out << "\"/>\n";
}

}  // namespace

void write_sweep_svg(const SweepResult& result, std::ostream& out) {
  std::vector<std::pair<double, double>> mean_pts, min_pts, max_pts;
  for (const LevelAggregate& agg : result.aggregates) {
    if (agg.trials == 0) continue;
    const auto n = static_cast<double>(agg.n);
    mean_pts.emplace_back(n, agg.mean_r);
    min_pts.emplace_back(n, agg.min_r);
    max_pts.emplace_back(n, agg.max_r);
  }
  if (mean_pts.size() < 2) {
    throw std::invalid_argument("write_sweep_svg: need at least two aggregated levels");
  }

  double n_lo = mean_pts.front().first, n_hi = mean_pts.back().first;
  double r_lo = min_pts.front().second, r_hi = max_pts.front().second;
  for (const auto& [n, r] : min_pts) r_lo = std::min(r_lo, r);
  for (const auto& [n, r] : max_pts) r_hi = std::max(r_hi, r);

  // Reference slope -1/d anchored a little above the first mean point.
  const double d = static_cast<double>(result.config.d);
  std::vector<std::pair<double, double>> ref_pts;
  const double ref0 = mean_pts.front().second * 1.6;
  for (const auto& [n, unused] : mean_pts) {
    (void)unused;
    ref_pts.emplace_back(n, ref0 * std::pow(n / n_lo, -1.0 / d));
  }
  for (const auto& [n, r] : ref_pts) {
    r_lo = std::min(r_lo, r);
    r_hi = std::max(r_hi, r);
  }

  const LogScale x{std::log10(n_lo), std::log10(n_hi), kMarginLeft,
                   kWidth - kMarginRight};
  const LogScale y{std::log10(r_lo) - 0.05, std::log10(r_hi) + 0.05,
                   kHeight - kMarginBottom, kMarginTop};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes.
  out << "  <line x1=\"" << kMarginLeft << "\" y1=\"" << kHeight - kMarginBottom
      << "\" x2=\"" << kWidth - kMarginRight << "\" y2=\""
      << kHeight - kMarginBottom << "\" stroke=\"black\"/>\n";
  out << "  <line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop
      << "\" x2=\"" << kMarginLeft << "\" y2=\"" << kHeight - kMarginBottom
      << "\" stroke=\"black\"/>\n";

  // x ticks at each n value.
  for (const auto& [n, unused] : mean_pts) {
    (void)unused;
    const double px = x(n);
    out << "  <line x1=\"" << fmt(px) << "\" y1=\"" << kHeight - kMarginBottom
        << "\" x2=\"" << fmt(px) << "\" y2=\"" << kHeight - kMarginBottom + 5
        << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << fmt(px) << "\" y=\"" << kHeight - kMarginBottom + 20
        << "\" font-size=\"11\" text-anchor=\"middle\">"
        << static_cast<std::uint64_t>(n) << "</text>\n";
  }
  // y ticks: 5 even steps in log space.
  for (int i = 0; i <= 4; ++i) {
    const double lv = y.lo + (y.hi - y.lo) * i / 4.0;
    const double v = std::pow(10.0, lv);
    const double py = y(v);
    out << "  <line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << fmt(py)
        << "\" x2=\"" << kMarginLeft << "\" y2=\"" << fmt(py)
        << "\" stroke=\"black\"/>\n";
    out << "  <text x=\"" << kMarginLeft - 8 << "\" y=\"" << fmt(py + 4)
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(v) << "</text>\n";
  }

  polyline(out, max_pts, x, y, "#999999", "4,3");
  polyline(out, min_pts, x, y, "#999999", "4,3");
  polyline(out, mean_pts, x, y, "#1f77b4", nullptr);
  // Reference line drawn from its endpoints only.
  out << "  <line x1=\"" << fmt(x(ref_pts.front().first)) << "\" y1=\""
      << fmt(y(ref_pts.front().second)) << "\" x2=\""
      << fmt(x(ref_pts.back().first)) << "\" y2=\""
      << fmt(y(ref_pts.back().second))
      << "\" stroke=\"#d62728\" stroke-width=\"1.2\" stroke-dasharray=\"7,4\"/>\n";

  out << "  <text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 15
      << "\" font-size=\"13\" text-anchor=\"middle\">n (log scale)</text>\n";
  out << "  <text x=\"20\" y=\"" << kHeight / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << kHeight / 2 << ")\">critical radius (log scale)</text>\n";
  out << "  <text x=\"" << kWidth / 2 << "\" y=\"22\" font-size=\"14\" "
      << "text-anchor=\"middle\">critical connectivity radius, d=" << result.config.d
      << " (mean/min/max over " << result.config.trials
      << " trials; dashed red: slope -1/" << result.config.d << ")</text>\n";
  out << "</svg>\n";
}

}  // namespace rgh
