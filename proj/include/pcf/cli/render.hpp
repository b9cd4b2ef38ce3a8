#pragma once

#include <complex>
#include <string>
#include <vector>

namespace pcf::cli {

/// Square window of the parameter plane.
struct View {
  double cx = 0;
  double cy = 0;
  double half = 2;  ///< half side length
};

/// Centered at 0, half side 2^(1/(d-1)) + 0.25 so every PCF parameter fits.
View default_view(int d);

/// Escape-time counts of z -> z^d + c from z = 0, row-major from the top
/// left, `max_iter` meaning "did not escape".
std::vector<int> escape_counts(int d, int size, const View& view, int max_iter = 256);

/// Pixel (column, row) of a parameter, possibly outside [0, size).
std::pair<double, double> to_pixel(std::complex<double> c, int size, const View& view);

std::string render_svg(const std::vector<int>& counts, int size, int max_iter,
                       const std::vector<std::complex<double>>& overlay, const View& view);
/// Binary P6 pixmap.
std::string render_ppm(const std::vector<int>& counts, int size, int max_iter,
                       const std::vector<std::complex<double>>& overlay, const View& view);

/// Minimal SVG scatter plot with linear axes and a connecting polyline.
std::string scatter_svg(const std::string& title, const std::vector<double>& xs, const std::vector<double>& ys,
                        const std::string& xlabel, const std::string& ylabel);

}  // namespace pcf::cli
