#include "topoflux/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "topoflux/errors.hpp"

namespace topoflux {

namespace {

constexpr int kCanvas = 560;
constexpr int kMargin = 50;

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

// Compact blue->green->yellow scale for continuous values in [0, 1].
std::string color_scale(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::round(255 * std::clamp(1.8 * t - 0.6, 0.0, 1.0)));
  const int g = static_cast<int>(std::round(255 * std::clamp(1.5 * t + 0.1, 0.0, 1.0)));
  const int b = static_cast<int>(std::round(255 * std::clamp(1.0 - 1.6 * t, 0.05, 1.0)));
  std::ostringstream ss;
  ss << "rgb(" << r << ',' << g << ',' << b << ')';
  return ss.str();
}

class SvgFile {
public:
  explicit SvgFile(const std::string& path) : out_(path) {
    if (!out_) throw ParseError("cannot write SVG file: " + path);
    out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\""
         << kCanvas << "\" viewBox=\"0 0 " << kCanvas << ' ' << kCanvas << "\">\n"
         << "<rect width=\"" << kCanvas << "\" height=\"" << kCanvas << "\" fill=\"white\"/>\n";
  }
  ~SvgFile() { out_ << "</svg>\n"; }

  void circle(double cx, double cy, double r, const std::string& fill, double opacity = 1.0) {
    out_ << "<circle cx=\"" << fmt(cx) << "\" cy=\"" << fmt(cy) << "\" r=\"" << fmt(r)
         << "\" fill=\"" << fill << "\" fill-opacity=\"" << fmt(opacity) << "\"/>\n";
  }
  void line(double x1, double y1, double x2, double y2, const std::string& stroke,
            double width = 1.0) {
    out_ << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2)
         << "\" y2=\"" << fmt(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\""
         << fmt(width) << "\"/>\n";
  }
  void text(double x, double y, const std::string& content, int size = 13) {
    out_ << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" font-family=\"sans-serif\""
         << " font-size=\"" << size << "\">" << escape(content) << "</text>\n";
  }
  void triangle(double cx, double cy, double r, const std::string& fill) {
    out_ << "<path d=\"M" << fmt(cx) << ' ' << fmt(cy - r) << " L" << fmt(cx - r) << ' '
         << fmt(cy + r) << " L" << fmt(cx + r) << ' ' << fmt(cy + r) << " Z\" fill=\"" << fill
         << "\"/>\n";
  }

private:
  static std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '&')
        out += "&amp;";
      else if (c == '<')
        out += "&lt;";
      else if (c == '>')
        out += "&gt;";
      else
        out += c;
    }
    return out;
  }
  std::ofstream out_;
};

struct Frame {
  double min_x, max_x, min_y, max_y;
  double to_x(double x) const {
    const double span = std::max(max_x - min_x, 1e-12);
    return kMargin + (x - min_x) / span * (kCanvas - 2 * kMargin);
  }
  double to_y(double y) const {
    const double span = std::max(max_y - min_y, 1e-12);
    return kCanvas - kMargin - (y - min_y) / span * (kCanvas - 2 * kMargin);
  }
};

Frame square_frame(double min_x, double max_x, double min_y, double max_y) {
  // Equal scales on both axes, centered on the data.
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-12});
  const double cx = (min_x + max_x) / 2, cy = (min_y + max_y) / 2;
  const double pad = span * 0.55;
  return {cx - pad, cx + pad, cy - pad, cy + pad};
}

}  // namespace

void write_scatter_svg(const std::string& path, const Eigen::MatrixXd& points,
                       const std::vector<double>& values, const CycleModel* cycle,
                       const std::string& title) {
  if (points.cols() < 2) throw ConfigError("scatter plot needs at least two coordinates");
  Frame frame = square_frame(points.col(0).minCoeff(), points.col(0).maxCoeff(),
                             points.col(1).minCoeff(), points.col(1).maxCoeff());
  SvgFile svg(path);
  if (!title.empty()) svg.text(kMargin, kMargin - 18, title);

  if (cycle != nullptr) {
    for (int k = 0; k < cycle->edge_count(); ++k) {
      const int a = cycle->loop[k];
      const int b = cycle->loop[(k + 1) % cycle->loop.size()];
      svg.line(frame.to_x(points(a, 0)), frame.to_y(points(a, 1)), frame.to_x(points(b, 0)),
               frame.to_y(points(b, 1)), "#888888", 1.5);
    }
  }

  double lo = 0.0, hi = 1.0;
  if (!values.empty()) {
    lo = *std::min_element(values.begin(), values.end());
    hi = *std::max_element(values.begin(), values.end());
    if (hi <= lo) hi = lo + 1.0;
  }
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const std::string fill = values.empty()
                                 ? std::string("#1f6eb4")
                                 : color_scale((values[i] - lo) / (hi - lo));
    svg.circle(frame.to_x(points(i, 0)), frame.to_y(points(i, 1)), 3.2, fill, 0.85);
  }
}

void write_diagram_svg(const std::string& path, const std::vector<PersistenceDiagram>& dgms,
                       const std::string& title) {
  double max_value = 0.0;
  for (const auto& d : dgms) {
    for (const auto& p : d.regular) max_value = std::max(max_value, p.death);
    for (const auto& e : d.essential) max_value = std::max(max_value, e.birth);
  }
  if (max_value <= 0.0) max_value = 1.0;
  const Frame frame{0.0, max_value * 1.05, 0.0, max_value * 1.05};

  static const char* palette[] = {"#1f6eb4", "#d95f02", "#2ca02c", "#9467bd"};
  SvgFile svg(path);
  if (!title.empty()) svg.text(kMargin, kMargin - 18, title);

  svg.line(frame.to_x(0), frame.to_y(0), frame.to_x(0), frame.to_y(max_value * 1.05), "#333333");
  svg.line(frame.to_x(0), frame.to_y(0), frame.to_x(max_value * 1.05), frame.to_y(0), "#333333");
  svg.line(frame.to_x(0), frame.to_y(0), frame.to_x(max_value * 1.05),
           frame.to_y(max_value * 1.05), "#aaaaaa");
  svg.text(kCanvas / 2 - 15, kCanvas - 12, "birth");
  svg.text(10, kCanvas / 2, "death");

  for (const auto& d : dgms) {
    const std::string color = palette[d.dim % 4];
    for (const auto& p : d.regular)
      svg.circle(frame.to_x(p.birth), frame.to_y(p.death), 3.5, color, 0.9);
    // Essential points sit on the top edge (infinite death).
    for (const auto& e : d.essential)
      svg.triangle(frame.to_x(e.birth), frame.to_y(max_value * 1.02), 4.0, color);
    svg.text(kCanvas - kMargin - 40, kMargin + 16 * (d.dim + 1), "H" + std::to_string(d.dim), 12);
    svg.circle(kCanvas - kMargin - 50, kMargin + 16 * (d.dim + 1) - 4, 3.5, color, 0.9);
  }
}

}  // namespace topoflux
