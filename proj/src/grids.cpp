#include <cmath>
#include <stdexcept>
#include <string>

#include "oped/image.hpp"
#include "oped/sinogram.hpp"

namespace oped {

Sinogram make_sinogram(ScanGeometry geometry) {
    Sinogram s;
    s.data.assign(static_cast<size_t>(geometry.n_views()) * geometry.n_detectors(), 0.0);
    s.geometry = std::move(geometry);
    return s;
}

void validate(const Sinogram& s) {
    const size_t expected = static_cast<size_t>(s.geometry.n_views()) * s.geometry.n_detectors();
    if (s.data.size() != expected) {
        throw std::invalid_argument("sinogram: payload has " + std::to_string(s.data.size()) +
                                    " entries, geometry expects " + std::to_string(expected));
    }
    for (double v : s.data) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("sinogram: non-finite entry");
        }
    }
}

ImageGrid make_image(int size, double roi, double fill) {
    if (size < 1) throw std::invalid_argument("image size must be >= 1");
    ImageGrid img;
    img.size = size;
    img.roi = roi;
    img.fill = fill;
    img.values.assign(static_cast<size_t>(size) * size, fill);
    return img;
}

}  // namespace oped
