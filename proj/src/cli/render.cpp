#include "pcf/cli/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

namespace pcf::cli {
namespace {

using Rgb = std::array<unsigned char, 3>;

Rgb color(int count, int max_iter) {
  if (count >= max_iter) return {0, 0, 0};
  // Banded blue-to-white ramp.
  const double t = std::fmod(std::sqrt(static_cast<double>(count)) / 4.0, 1.0);
  const auto ch = [](double x) { return static_cast<unsigned char>(std::lround(std::clamp(x, 0.0, 1.0) * 255)); };
  return {ch(t * t), ch(t), ch(0.35 + 0.65 * t)};
}

std::string hex(const Rgb& c) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

}  // namespace

View default_view(int d) {
  View v;
  v.half = std::pow(2.0, 1.0 / (d - 1)) + 0.25;
  return v;
}

std::vector<int> escape_counts(int d, int size, const View& view, int max_iter) {
  std::vector<int> out(static_cast<std::size_t>(size) * static_cast<std::size_t>(size));
  const double step = 2 * view.half / size;
  for (int row = 0; row < size; ++row) {
    const double y = view.cy + view.half - (row + 0.5) * step;
    for (int col = 0; col < size; ++col) {
      const std::complex<double> c(view.cx - view.half + (col + 0.5) * step, y);
      std::complex<double> z = 0;
      int k = 0;
      for (; k < max_iter && std::norm(z) <= 16.0; ++k) {
        std::complex<double> p = z;
        for (int i = 1; i < d; ++i) p *= z;
        z = p + c;
      }
      out[static_cast<std::size_t>(row) * size + col] = k;
    }
  }
  return out;
}

std::pair<double, double> to_pixel(std::complex<double> c, int size, const View& view) {
  const double step = 2 * view.half / size;
  return {(c.real() - (view.cx - view.half)) / step, (view.cy + view.half - c.imag()) / step};
}

std::string render_svg(const std::vector<int>& counts, int size, int max_iter,
                       const std::vector<std::complex<double>>& overlay, const View& view) {
  std::string out;
  const std::string s = std::to_string(size);
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + s + "\" height=\"" + s +
         "\" viewBox=\"0 0 " + s + " " + s + "\" shape-rendering=\"crispEdges\">\n";
  const Rgb background = color(0, max_iter);
  out += "<rect x=\"0\" y=\"0\" width=\"" + s + "\" height=\"" + s + "\" fill=\"" + hex(background) + "\"/>\n";
  for (int row = 0; row < size; ++row) {
    int col = 0;
    while (col < size) {
      const Rgb c = color(counts[static_cast<std::size_t>(row) * size + col], max_iter);
      int end = col + 1;
      while (end < size && color(counts[static_cast<std::size_t>(row) * size + end], max_iter) == c) ++end;
      if (c != background) {
        out += "<rect x=\"" + std::to_string(col) + "\" y=\"" + std::to_string(row) + "\" width=\"" +
               std::to_string(end - col) + "\" height=\"1\" fill=\"" + hex(c) + "\"/>\n";
      }
      col = end;
    }
  }
  for (const auto& c : overlay) {
    auto [x, y] = to_pixel(c, size, view);
    out += "<circle cx=\"" + fmt("%.2f", x) + "\" cy=\"" + fmt("%.2f", y) + "\" r=\"2\" fill=\"#e03020\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string render_ppm(const std::vector<int>& counts, int size, int max_iter,
                       const std::vector<std::complex<double>>& overlay, const View& view) {
  std::vector<Rgb> px(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) px[i] = color(counts[i], max_iter);
  for (const auto& c : overlay) {
    auto [x, y] = to_pixel(c, size, view);
    const int cx = static_cast<int>(std::floor(x)), cy = static_cast<int>(std::floor(y));
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx) {
        const int xx = cx + dx, yy = cy + dy;
        if (xx >= 0 && xx < size && yy >= 0 && yy < size) px[static_cast<std::size_t>(yy) * size + xx] = {224, 48, 32};
      }
  }
  std::string out = "P6\n" + std::to_string(size) + " " + std::to_string(size) + "\n255\n";
  out.reserve(out.size() + px.size() * 3);
  for (const auto& p : px) out.append(reinterpret_cast<const char*>(p.data()), 3);
  return out;
}

std::string scatter_svg(const std::string& title, const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::string& xlabel, const std::string& ylabel) {
  const double W = 640, H = 420, L = 70, R = 20, T = 40, B = 50;
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!xs.empty()) {
    x0 = *std::min_element(xs.begin(), xs.end());
    x1 = *std::max_element(xs.begin(), xs.end());
    y0 = *std::min_element(ys.begin(), ys.end());
    y1 = *std::max_element(ys.begin(), ys.end());
  }
  if (x1 - x0 < 1e-12) x1 = x0 + 1;
  if (y1 - y0 < 1e-12) y1 = y0 + 1;
  const auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  const auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" height=\"420\">\n";
  out += "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
  out += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" + title +
         "</text>\n";
  out += "<line x1=\"" + fmt("%.1f", L) + "\" y1=\"" + fmt("%.1f", H - B) + "\" x2=\"" + fmt("%.1f", W - R) +
         "\" y2=\"" + fmt("%.1f", H - B) + "\" stroke=\"black\"/>\n";
  out += "<line x1=\"" + fmt("%.1f", L) + "\" y1=\"" + fmt("%.1f", T) + "\" x2=\"" + fmt("%.1f", L) + "\" y2=\"" +
         fmt("%.1f", H - B) + "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
    out += "<text x=\"" + fmt("%.1f", px(xv)) + "\" y=\"" + fmt("%.1f", H - B + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + fmt("%.3g", xv) + "</text>\n";
    out += "<text x=\"" + fmt("%.1f", L - 6) + "\" y=\"" + fmt("%.1f", py(yv) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + fmt("%.3g", yv) + "</text>\n";
  }
  out += "<text x=\"" + fmt("%.1f", (L + W - R) / 2) + "\" y=\"" + fmt("%.1f", H - 10) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" + xlabel + "</text>\n";
  out += "<text x=\"16\" y=\"" + fmt("%.1f", (T + H - B) / 2) + "\" transform=\"rotate(-90 16 " +
         fmt("%.1f", (T + H - B) / 2) + ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
         ylabel + "</text>\n";
  if (!xs.empty()) {
    out += "<polyline fill=\"none\" stroke=\"#3060c0\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) out += ' ';
      out += fmt("%.2f", px(xs[i])) + "," + fmt("%.2f", py(ys[i]));
    }
    out += "\"/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
      out += "<circle cx=\"" + fmt("%.2f", px(xs[i])) + "\" cy=\"" + fmt("%.2f", py(ys[i])) +
             "\" r=\"3\" fill=\"#3060c0\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace pcf::cli
