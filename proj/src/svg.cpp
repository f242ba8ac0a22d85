#include "ymlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "ymlab/io.hpp"

namespace ymlab {

namespace {

struct Axis {
  double lo, hi;  // log10 range
  double map(double v, double pix_lo, double pix_hi) const {
    return pix_lo + (std::log10(v) - lo) / (hi - lo) * (pix_hi - pix_lo);
  }
};

}  // namespace

void write_trace_plot(const std::filesystem::path& path, const HeatTraceSeries& series,
                      const SmallTFit& fit, const std::string& title) {
  std::ofstream os(path);
  if (!os) throw io_error("cannot open " + path.string() + " for writing");

  const double W = 640, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
  double vmin = 1e300, vmax = 0, tmin = 1e300, tmax = 0;
  for (size_t j = 0; j < series.t.size(); ++j) {
    tmin = std::min(tmin, series.t[j]);
    tmax = std::max(tmax, series.t[j]);
    double av = std::abs(series.value[j]);
    if (av > 0) {
      vmin = std::min(vmin, av);
      vmax = std::max(vmax, av);
    }
  }
  if (vmax <= 0) {  // all-zero series: fix a unit box
    vmin = 1e-1;
    vmax = 1e+1;
  }
  vmin = std::max(vmin / 2, 1e-300);
  vmax *= 2;
  Axis ax{std::log10(tmin / 1.15), std::log10(tmax * 1.15)};
  Axis ay{std::log10(vmin), std::log10(vmax)};

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  os << "<desc>\nt,value,stderr,model\n";
  for (size_t j = 0; j < series.t.size(); ++j)
    os << fmt17(series.t[j]) << "," << fmt17(series.value[j]) << "," << fmt17(series.stderr_[j])
       << "," << fmt17(fit.model(series.t[j])) << "\n";
  os << "</desc>\n";
  os << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
     << "</text>\n";

  auto px = [&](double t) { return ax.map(t, ml, W - mr); };
  auto py = [&](double v) { return H - mb - (ay.map(v, 0, H - mb - mt) - 0); };

  // frame and decade ticks
  os << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\""
     << H - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int e = static_cast<int>(std::ceil(ax.lo)); e <= static_cast<int>(std::floor(ax.hi)); ++e) {
    double x = px(std::pow(10.0, e));
    os << "<line x1=\"" << x << "\" y1=\"" << H - mb << "\" x2=\"" << x << "\" y2=\"" << H - mb + 6
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << x << "\" y=\"" << H - mb + 20 << "\" text-anchor=\"middle\" font-size=\"11\">1e"
       << e << "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(ay.lo)); e <= static_cast<int>(std::floor(ay.hi)); ++e) {
    double y = py(std::pow(10.0, e));
    os << "<line x1=\"" << ml - 6 << "\" y1=\"" << y << "\" x2=\"" << ml << "\" y2=\"" << y
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << ml - 10 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\" font-size=\"11\">1e"
       << e << "</text>\n";
  }
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
     << "\" text-anchor=\"middle\" font-size=\"13\">t [a^2]</text>\n";
  os << "<text x=\"16\" y=\"" << H / 2
     << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 " << H / 2
     << ")\">|Tr_sub|</text>\n";

  // fitted model curve (dense in t)
  os << "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" points=\"";
  const int nline = 120;
  for (int i = 0; i < nline; ++i) {
    double t = tmin * std::pow(tmax / tmin, static_cast<double>(i) / (nline - 1));
    double m = std::abs(fit.model(t));
    if (m < vmin) m = vmin;
    if (m > vmax) m = vmax;
    os << px(t) << "," << py(m) << " ";
  }
  os << "\"/>\n";

  // data with error bars
  for (size_t j = 0; j < series.t.size(); ++j) {
    double av = std::abs(series.value[j]);
    if (av <= 0) continue;
    double x = px(series.t[j]);
    double y = py(std::min(std::max(av, vmin), vmax));
    if (series.stderr_[j] > 0) {
      double hi = std::min(av + series.stderr_[j], vmax);
      double lo = std::max(av - series.stderr_[j], vmin);
      os << "<line x1=\"" << x << "\" y1=\"" << py(lo) << "\" x2=\"" << x << "\" y2=\"" << py(hi)
         << "\" stroke=\"#1f77b4\"/>\n";
    }
    os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  }

  os << "<text x=\"" << W - mr - 8 << "\" y=\"" << mt + 18
     << "\" text-anchor=\"end\" font-size=\"12\" fill=\"#d62728\">model (A1/t + A2)/16pi^2</text>\n";
  os << "</svg>\n";
  if (!os) throw io_error("write failed: " + path.string());
}

}  // namespace ymlab
