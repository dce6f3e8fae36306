#include "reekit/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace reekit::viz {

std::optional<Theme> parse_theme(std::string_view text) noexcept {
  if (text == "light") return Theme::Light;
  if (text == "dark") return Theme::Dark;
  return std::nullopt;
}

std::string_view palette_color(std::size_t index) noexcept {
  static constexpr std::array<std::string_view, 10> kPalette = {
      "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
      "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return kPalette[index % kPalette.size()];
}

namespace {

struct Colors {
  std::string_view background;
  std::string_view foreground;
  std::string_view grid;
};

Colors colors_for(Theme theme) {
  if (theme == Theme::Dark) return {"#1e1e1e", "#e0e0e0", "#444444"};
  return {"#ffffff", "#222222", "#dddddd"};
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string num(double v) {
  if (std::abs(v) < 0.005) v = 0.0;  // no "-0.00"
  return fmt::format("{:.2f}", v);
}

std::string tick_text(double v) {
  if (std::abs(v) < 1e-12) return "0";
  return fmt::format("{:.6g}", v);
}

struct Span {
  double lo = 0.0;
  double hi = 1.0;

  void include(double v) {
    if (!std::isfinite(v)) return;
    if (empty) {
      lo = hi = v;
      empty = false;
    } else {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  // Pads a range by 5% (or to unit width when degenerate).
  Span padded() const {
    if (empty) return {0.0, 1.0, false};
    if (!(hi > lo)) return {lo - 0.5, hi + 0.5, false};
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad, false};
  }
  bool empty = true;
};

std::vector<double> nice_ticks(double lo, double hi, int target = 5) {
  std::vector<double> ticks;
  const double span = hi - lo;
  if (!(span > 0.0)) return ticks;
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

// Linear map from a data span onto a pixel interval.
struct Axis {
  double lo, hi, pix_lo, pix_hi;
  double operator()(double v) const { return pix_lo + (v - lo) / (hi - lo) * (pix_hi - pix_lo); }
};

struct Box {
  double left, top, right, bottom;
  double width() const { return right - left; }
  double height() const { return bottom - top; }
};

class Canvas {
 public:
  Canvas(const SvgOptions& options) : options_(options), colors_(colors_for(options.theme)) {
    out_ += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
        "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"11\">\n",
        options.width, options.height);
    out_ += fmt::format("<rect class=\"background\" x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n",
                        options.width, options.height, colors_.background);
  }

  const Colors& colors() const { return colors_; }

  void raw(std::string_view s) { out_ += s; }

  void line(double x1, double y1, double x2, double y2, std::string_view stroke,
            double width = 1.0, std::string_view cls = {}) {
    out_ += fmt::format("<line{} x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>\n",
                        cls.empty() ? "" : fmt::format(" class=\"{}\"", cls), num(x1), num(y1),
                        num(x2), num(y2), stroke, num(width));
  }

  void rect(double x, double y, double w, double h, std::string_view fill, std::string_view stroke,
            std::string_view cls = {}, double opacity = 1.0) {
    out_ += fmt::format(
        "<rect{} x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"{}\"{}/>\n",
        cls.empty() ? "" : fmt::format(" class=\"{}\"", cls), num(x), num(y), num(std::max(0.0, w)),
        num(std::max(0.0, h)), fill, stroke,
        opacity < 1.0 ? fmt::format(" fill-opacity=\"{}\"", num(opacity)) : "");
  }

  void circle(double x, double y, double r, std::string_view fill, std::string_view ref) {
    out_ += fmt::format("<circle class=\"point\" cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" fill-opacity=\"0.8\"><title>{}</title></circle>\n",
                        num(x), num(y), num(r), fill, escape(ref));
  }

  void text(double x, double y, std::string_view s, std::string_view anchor = "middle",
            double rotate = 0.0, int font_size = 0) {
    const std::string transform =
        rotate != 0.0 ? fmt::format(" transform=\"rotate({} {} {})\"", num(rotate), num(x), num(y)) : "";
    const std::string size = font_size > 0 ? fmt::format(" font-size=\"{}\"", font_size) : "";
    out_ += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"{}\" fill=\"{}\"{}{}>{}</text>\n", num(x),
                        num(y), anchor, colors_.foreground, size, transform, escape(s));
  }

  void path(std::string_view d, std::string_view stroke, std::string_view fill,
            std::string_view cls, std::string_view title = {}, double width = 1.5,
            double fill_opacity = 1.0) {
    out_ += fmt::format("<path class=\"{}\" d=\"{}\" stroke=\"{}\" stroke-width=\"{}\" fill=\"{}\"{}>",
                        cls, d, stroke, num(width), fill,
                        fill_opacity < 1.0 ? fmt::format(" fill-opacity=\"{}\"", num(fill_opacity)) : "");
    if (!title.empty()) out_ += fmt::format("<title>{}</title>", escape(title));
    out_ += "</path>\n";
  }

  // Frame, ticks and labels for a 2-D panel.
  void axes(const Box& box, const Axis& x, const Axis& y, std::string_view x_label,
            std::string_view y_label, bool tick_labels = true) {
    rect(box.left, box.top, box.width(), box.height(), "none", colors_.foreground, "frame");
    for (double t : nice_ticks(std::min(x.lo, x.hi), std::max(x.lo, x.hi))) {
      const double px = x(t);
      line(px, box.bottom, px, box.bottom + 4, colors_.foreground);
      if (tick_labels) text(px, box.bottom + 16, tick_text(t));
    }
    for (double t : nice_ticks(std::min(y.lo, y.hi), std::max(y.lo, y.hi))) {
      const double py = y(t);
      line(box.left - 4, py, box.left, py, colors_.foreground);
      if (tick_labels) text(box.left - 6, py + 4, tick_text(t), "end");
    }
    if (!x_label.empty()) text(0.5 * (box.left + box.right), box.bottom + 34, x_label);
    if (!y_label.empty()) text(box.left - 52, 0.5 * (box.top + box.bottom), y_label, "middle", -90);
  }

  void legend(const std::vector<std::string>& groups, std::string_view title) {
    if (groups.empty() || (groups.size() == 1 && groups[0] == kAllGroup)) return;
    const double x = options_.width - 150;
    double y = 40;
    if (!title.empty()) {
      text(x, y, title, "start");
      y += 16;
    }
    for (std::size_t i = 0; i < groups.size(); ++i) {
      rect(x, y - 9, 10, 10, palette_color(i), "none", "legend");
      text(x + 16, y, groups[i], "start");
      y += 16;
    }
  }

  std::string finish() {
    out_ += "</svg>\n";
    return std::move(out_);
  }

 private:
  SvgOptions options_;
  Colors colors_;
  std::string out_;
};

std::size_t group_index(const VizPayload& p, const std::string& group) {
  const auto it = std::lower_bound(p.groups.begin(), p.groups.end(), group);
  return static_cast<std::size_t>(it - p.groups.begin());
}

Box plot_box(const SvgOptions& o, bool legend) {
  return {80.0, 30.0, o.width - (legend ? 170.0 : 20.0), o.height - 60.0};
}

bool has_legend(const VizPayload& p) {
  return !(p.groups.empty() || (p.groups.size() == 1 && p.groups[0] == kAllGroup));
}

void draw_spider(Canvas& c, const VizPayload& p, const SpiderSeries& s, const SvgOptions& o) {
  const Box box = plot_box(o, has_legend(p));
  Span ys;
  for (const auto& l : s.lines) {
    for (const auto& v : l.values) {
      if (v) ys.include(std::log10(*v));
    }
  }
  Span yl = ys.padded();
  if (ys.empty) yl = {-1.0, 1.0, false};
  const double r_max = s.radii_pm.empty() ? 1.0 : s.radii_pm.front();
  const double r_min = s.radii_pm.empty() ? 0.0 : s.radii_pm.back();
  const double r_pad = 0.03 * (r_max - r_min);
  // Larger radius (La) on the left.
  const Axis x{r_max + r_pad, r_min - r_pad, box.left, box.right};
  const Axis y{yl.lo, yl.hi, box.bottom, box.top};

  c.rect(box.left, box.top, box.width(), box.height(), "none", c.colors().foreground, "frame");
  for (std::size_t i = 0; i < s.elements.size(); ++i) {
    const double px = x(s.radii_pm[i]);
    c.line(px, box.top, px, box.bottom, c.colors().grid, 0.5);
    c.text(px, box.bottom + 16, s.elements[i]);
  }
  for (int d = static_cast<int>(std::ceil(yl.lo)); d <= static_cast<int>(std::floor(yl.hi)); ++d) {
    const double py = y(d);
    c.line(box.left - 4, py, box.left, py, c.colors().foreground);
    c.text(box.left - 6, py + 4, fmt::format("1e{}", d), "end");
  }
  c.text(0.5 * (box.left + box.right), box.bottom + 34, p.axis_labels.at(0));
  c.text(box.left - 52, 0.5 * (box.top + box.bottom), p.axis_labels.at(1), "middle", -90);

  for (const auto& l : s.lines) {
    std::string d;
    bool pen_down = false;
    for (std::size_t i = 0; i < l.values.size(); ++i) {
      if (!l.values[i]) {
        pen_down = false;
        continue;
      }
      d += fmt::format("{}{} {} ", pen_down ? "L" : "M", num(x(s.radii_pm[i])),
                       num(y(std::log10(*l.values[i]))));
      pen_down = true;
    }
    if (!d.empty()) d.pop_back();
    c.path(d, palette_color(group_index(p, l.group)), "none", "series", p.point_refs[l.ref]);
  }
}

void draw_scatter2d(Canvas& c, const VizPayload& p, const ScatterSeries& s, const SvgOptions& o) {
  const Box box = plot_box(o, has_legend(p));
  Span xs, ys;
  for (const auto& pt : s.points) {
    xs.include(pt.coords[0]);
    ys.include(pt.coords[1]);
  }
  const Span xr = xs.padded(), yr = ys.padded();
  const Axis x{xr.lo, xr.hi, box.left, box.right};
  const Axis y{yr.lo, yr.hi, box.bottom, box.top};
  c.axes(box, x, y, p.axis_labels.at(0), p.axis_labels.at(1));
  for (const auto& pt : s.points) {
    c.circle(x(pt.coords[0]), y(pt.coords[1]), 3.5, palette_color(group_index(p, pt.group)),
             p.point_refs[pt.ref]);
  }
}

void draw_scatter3d(Canvas& c, const VizPayload& p, const ScatterSeries& s, const SvgOptions& o) {
  const Box box = plot_box(o, has_legend(p));
  std::array<Span, 3> spans;
  for (const auto& pt : s.points) {
    for (int k = 0; k < 3; ++k) spans[k].include(pt.coords[k]);
  }
  std::array<Span, 3> ranges;
  for (int k = 0; k < 3; ++k) ranges[k] = spans[k].padded();

  // Fixed camera: azimuth 45 deg, elevation 25 deg, orthographic.
  const double az = 45.0 * 3.14159265358979323846 / 180.0;
  const double el = 25.0 * 3.14159265358979323846 / 180.0;
  const auto unit = [&](int k, double v) {
    return 2.0 * (v - ranges[k].lo) / (ranges[k].hi - ranges[k].lo) - 1.0;
  };
  struct Projected {
    double sx, sy, depth;
  };
  const auto project = [&](double ux, double uy, double uz) {
    // Data z is drawn vertically.
    const double px = ux * std::cos(az) - uy * std::sin(az);
    const double depth = ux * std::sin(az) + uy * std::cos(az);
    const double py = uz * std::cos(el) - depth * std::sin(el);
    return Projected{px, py, depth * std::cos(el) + uz * std::sin(el)};
  };
  const double scale = 0.3 * std::min(box.width(), box.height());
  const double cx = 0.5 * (box.left + box.right);
  const double cy = 0.5 * (box.top + box.bottom);
  const auto screen = [&](const Projected& q) { return std::pair{cx + scale * q.sx, cy - scale * q.sy}; };

  const Projected origin = project(-1, -1, -1);
  const std::array<Projected, 3> tips = {project(1, -1, -1), project(-1, 1, -1), project(-1, -1, 1)};
  const auto [ox, oy] = screen(origin);
  for (int k = 0; k < 3; ++k) {
    const auto [tx, ty] = screen(tips[static_cast<std::size_t>(k)]);
    c.line(ox, oy, tx, ty, c.colors().foreground, 1.0, "axis");
    c.text(tx, ty + (k == 2 ? -8 : 16), p.axis_labels.at(static_cast<std::size_t>(k)));
  }

  std::vector<std::size_t> order(s.points.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<Projected> projected;
  for (const auto& pt : s.points) {
    projected.push_back(project(unit(0, pt.coords[0]), unit(1, pt.coords[1]), unit(2, pt.coords[2])));
  }
  // Far points first.
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return projected[a].depth > projected[b].depth;
  });
  for (std::size_t i : order) {
    const auto [sx, sy] = screen(projected[i]);
    c.circle(sx, sy, 3.5, palette_color(group_index(p, s.points[i].group)),
             p.point_refs[s.points[i].ref]);
  }
}

void draw_splom(Canvas& c, const VizPayload& p, const SplomSeries& s, const SvgOptions& o) {
  const Box outer = plot_box(o, has_legend(p));
  const auto n = s.indices.size();
  const double gap = 8.0;
  const double cell_w = (outer.width() - gap * static_cast<double>(n - 1)) / static_cast<double>(n);
  const double cell_h = (outer.height() - gap * static_cast<double>(n - 1)) / static_cast<double>(n);
  std::vector<Span> ranges;
  for (const auto& r : s.ranges) {
    Span sp;
    if (!s.refs.empty()) {
      sp.include(r.min);
      sp.include(r.max);
    }
    ranges.push_back(sp.padded());
  }
  for (const auto& panel : s.panels) {
    const double left = outer.left + static_cast<double>(panel.col) * (cell_w + gap);
    const double top = outer.top + static_cast<double>(panel.row) * (cell_h + gap);
    const Box box{left, top, left + cell_w, top + cell_h};
    const Span& xr = ranges[static_cast<std::size_t>(panel.col)];
    const Axis x{xr.lo, xr.hi, box.left, box.right};
    c.rect(box.left, box.top, box.width(), box.height(), "none", c.colors().foreground, "frame");
    // Symbol on one line, gloss below it in a smaller font.
    const auto split_label = [](int index) {
      const auto label = lambda_label(index);
      const auto cut = label.find(" (");
      if (cut == std::string::npos) return std::pair{label, std::string()};
      return std::pair{label.substr(0, cut), label.substr(cut + 1)};
    };
    if (panel.row + 1 == static_cast<int>(n)) {
      const auto [head, gloss] = split_label(panel.x_index);
      const double cx = 0.5 * (box.left + box.right);
      c.text(cx, box.bottom + 16, head);
      if (!gloss.empty()) c.text(cx, box.bottom + 29, gloss, "middle", 0.0, 9);
    }
    if (panel.col == 0) {
      const auto [head, gloss] = split_label(panel.y_index);
      const double cy = 0.5 * (box.top + box.bottom);
      c.text(box.left - 24, cy, head, "middle", -90);
      if (!gloss.empty()) c.text(box.left - 10, cy, gloss, "middle", -90, 9);
    }
    if (panel.diagonal) {
      const auto& h = panel.histogram;
      std::size_t peak = 1;
      for (auto count : h.counts) peak = std::max(peak, count);
      for (std::size_t b = 0; b < h.counts.size(); ++b) {
        const double x0 = x(h.edges[b]);
        const double x1 = x(h.edges[b + 1]);
        const double bar = box.height() * 0.9 * static_cast<double>(h.counts[b]) / static_cast<double>(peak);
        c.rect(x0, box.bottom - bar, x1 - x0, bar, c.colors().grid, c.colors().foreground, "bar");
      }
      continue;
    }
    const Span& yr = ranges[static_cast<std::size_t>(panel.row)];
    const Axis y{yr.lo, yr.hi, box.bottom, box.top};
    for (std::size_t i = 0; i < panel.points.size(); ++i) {
      c.circle(x(panel.points[i][0]), y(panel.points[i][1]), 2.0,
               palette_color(group_index(p, s.groups[i])), p.point_refs[s.refs[i]]);
    }
  }
}

void draw_density(Canvas& c, const VizPayload& p, const DensitySeries& s, const SvgOptions& o) {
  Box box = plot_box(o, has_legend(p));
  const bool histogram_marginal =
      !s.grids.empty() && s.grids.front().marginal.kind == MarginalKind::Histogram;
  const double strip = 50.0;
  if (histogram_marginal) {
    box.top += strip;
    box.right -= strip;
  }
  Span xs, ys;
  for (const auto& g : s.grids) {
    xs.include(g.x_grid(0));
    xs.include(g.x_grid(g.x_grid.size() - 1));
    ys.include(g.y_grid(0));
    ys.include(g.y_grid(g.y_grid.size() - 1));
  }
  const Span xr = xs.empty ? xs.padded() : Span{xs.lo, xs.hi, false};
  const Span yr = ys.empty ? ys.padded() : Span{ys.lo, ys.hi, false};
  const Axis x{xr.lo, xr.hi, box.left, box.right};
  const Axis y{yr.lo, yr.hi, box.bottom, box.top};
  c.axes(box, x, y, p.axis_labels.at(0), p.axis_labels.at(1));

  for (const auto& g : s.grids) {
    const auto color = palette_color(group_index(p, g.group));
    for (std::size_t k = 0; k < g.contours.size(); ++k) {
      const double width = 0.8 + 0.2 * static_cast<double>(k);
      for (const auto& line : g.contours[k].lines) {
        std::string d;
        for (std::size_t i = 0; i < line.points.size(); ++i) {
          d += fmt::format("{}{} {} ", i == 0 ? "M" : "L", num(x(line.points[i].x())),
                           num(y(line.points[i].y())));
        }
        if (line.closed) d += "Z";
        else if (!d.empty()) d.pop_back();
        c.path(d, color, "none", "contour", g.group, width);
      }
    }
    const auto& m = g.marginal;
    if (m.kind == MarginalKind::Rug) {
      for (double v : m.x_rug) c.line(x(v), box.bottom, x(v), box.bottom - 8, color, 1.0, "rug");
      for (double v : m.y_rug) c.line(box.left, y(v), box.left + 8, y(v), color, 1.0, "rug");
    } else {
      const auto draw_hist = [&](const kde::Histogram& h, bool along_x) {
        std::size_t peak = 1;
        for (auto count : h.counts) peak = std::max(peak, count);
        for (std::size_t b = 0; b < h.counts.size(); ++b) {
          const double len = (strip - 6) * static_cast<double>(h.counts[b]) / static_cast<double>(peak);
          if (along_x) {
            const double x0 = x(h.edges[b]), x1 = x(h.edges[b + 1]);
            c.rect(x0, box.top - 4 - len, x1 - x0, len, color, "none", "bar", 0.4);
          } else {
            const double y0 = y(h.edges[b + 1]), y1 = y(h.edges[b]);
            c.rect(box.right + 4, y0, len, y1 - y0, color, "none", "bar", 0.4);
          }
        }
      };
      if (m.x_histogram) draw_hist(*m.x_histogram, true);
      if (m.y_histogram) draw_hist(*m.y_histogram, false);
    }
  }
}

void draw_violin(Canvas& c, const VizPayload& p, const ViolinSeries& s, const SvgOptions& o) {
  const Box box = plot_box(o, false);
  Span ys;
  for (const auto& g : s.groups) {
    if (!g.positions.empty()) {
      ys.include(g.positions.front());
      ys.include(g.positions.back());
    }
  }
  const Span yr = ys.padded();
  const Axis y{yr.lo, yr.hi, box.bottom, box.top};
  c.rect(box.left, box.top, box.width(), box.height(), "none", c.colors().foreground, "frame");
  for (double t : nice_ticks(yr.lo, yr.hi)) {
    c.line(box.left - 4, y(t), box.left, y(t), c.colors().foreground);
    c.text(box.left - 6, y(t) + 4, tick_text(t), "end");
  }
  c.text(0.5 * (box.left + box.right), box.bottom + 34, p.axis_labels.at(0));
  c.text(box.left - 52, 0.5 * (box.top + box.bottom), p.axis_labels.at(1), "middle", -90);

  const double slot = s.groups.empty() ? box.width() : box.width() / static_cast<double>(s.groups.size());
  for (std::size_t gi = 0; gi < s.groups.size(); ++gi) {
    const auto& g = s.groups[gi];
    const auto color = palette_color(group_index(p, g.group));
    const double centre = box.left + slot * (static_cast<double>(gi) + 0.5);
    const double half = 0.4 * slot;
    const double peak = g.densities.empty() ? 1.0 : *std::max_element(g.densities.begin(), g.densities.end());
    std::string d;
    for (std::size_t i = 0; i < g.positions.size(); ++i) {
      d += fmt::format("{}{} {} ", i == 0 ? "M" : "L", num(centre - half * g.densities[i] / peak),
                       num(y(g.positions[i])));
    }
    for (std::size_t i = g.positions.size(); i-- > 0;) {
      d += fmt::format("L{} {} ", num(centre + half * g.densities[i] / peak), num(y(g.positions[i])));
    }
    d += "Z";
    c.path(d, color, color, "violin", g.group, 1.0, 0.35);
    const double box_half = 0.08 * slot;
    c.line(centre, y(g.whisker_low), centre, y(g.whisker_high), c.colors().foreground, 1.0, "whisker");
    c.rect(centre - box_half, y(g.q3), 2 * box_half, y(g.q1) - y(g.q3), c.colors().background,
           c.colors().foreground, "box");
    c.line(centre - box_half, y(g.median), centre + box_half, y(g.median), c.colors().foreground, 2.0,
           "median");
    for (std::size_t i = 0; i < g.values.size(); ++i) {
      c.circle(centre, y(g.values[i]), 1.5, color, p.point_refs[g.refs[i]]);
    }
    c.text(centre, box.bottom + 16, g.group);
  }
}

}  // namespace

std::string export_svg(const VizPayload& payload, const SvgOptions& options) {
  Canvas canvas(options);
  std::visit(
      [&](const auto& series) {
        using T = std::decay_t<decltype(series)>;
        if constexpr (std::is_same_v<T, SpiderSeries>) {
          draw_spider(canvas, payload, series, options);
        } else if constexpr (std::is_same_v<T, ScatterSeries>) {
          if (payload.kind == VizKind::Scatter3d) {
            draw_scatter3d(canvas, payload, series, options);
          } else {
            draw_scatter2d(canvas, payload, series, options);
          }
        } else if constexpr (std::is_same_v<T, SplomSeries>) {
          draw_splom(canvas, payload, series, options);
        } else if constexpr (std::is_same_v<T, DensitySeries>) {
          draw_density(canvas, payload, series, options);
        } else {
          draw_violin(canvas, payload, series, options);
        }
      },
      payload.series);
  if (payload.kind != VizKind::Violin) canvas.legend(payload.groups, payload.color_key);
  return canvas.finish();
}

}  // namespace reekit::viz
