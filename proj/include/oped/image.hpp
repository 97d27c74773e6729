#pragma once

#include <vector>

namespace oped {

/// M x M scalar field over [-1, 1]^2, row-major with the top row at the
/// largest y. Pixel centers follow the fixed convention
///   x_c = (2c+1)/M - 1,   y_r = 1 - (2r+1)/M.
/// Pixels outside the circle of radius `roi` hold exactly `fill`.
struct ImageGrid {
    int size = 0;
    double roi = 0.0;
    double fill = 0.0;
    std::vector<double> values;  ///< size * size entries

    double& at(int r, int c) { return values[static_cast<size_t>(r) * size + c]; }
    double at(int r, int c) const { return values[static_cast<size_t>(r) * size + c]; }

    static double pixel_x(int size, int c) { return (2.0 * c + 1.0) / size - 1.0; }
    static double pixel_y(int size, int r) { return 1.0 - (2.0 * r + 1.0) / size; }

    bool in_roi(int r, int c) const {
        double x = pixel_x(size, c), y = pixel_y(size, r);
        return x * x + y * y <= roi * roi;
    }
};

/// Grid with every pixel set to `fill`. `roi` only records the mask radius;
/// the caller decides which pixels to overwrite.
ImageGrid make_image(int size, double roi, double fill = 0.0);

}  // namespace oped
