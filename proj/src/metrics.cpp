#include "oped/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace oped {

namespace {

void check_same_size(const ImageGrid& a, const ImageGrid& b) {
    if (a.size != b.size) {
        throw std::invalid_argument("image dimension mismatch: " + std::to_string(a.size) +
                                    " vs " + std::to_string(b.size));
    }
}

bool pixel_selected(const ImageGrid& a, const ImageGrid& b, bool roi_only, int r, int c) {
    if (!roi_only) return true;
    double x = ImageGrid::pixel_x(a.size, c), y = ImageGrid::pixel_y(a.size, r);
    double radius = std::min(a.roi, b.roi);
    return x * x + y * y <= radius * radius;
}

}  // namespace

std::string ErrorReport::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"rse\":" << rse << ",\"me\":" << me << ",\"max_abs\":" << max_abs
       << ",\"n_pixels\":" << n_pixels << ",\"roi_only\":" << (roi_only ? "true" : "false")
       << "}";
    return os.str();
}

ErrorReport compare(const ImageGrid& reference, const ImageGrid& reconstructed, bool roi_only) {
    check_same_size(reference, reconstructed);
    double sq_diff = 0.0, sq_recon = 0.0, abs_sum = 0.0, max_abs = 0.0;
    std::int64_t count = 0;
    for (int r = 0; r < reference.size; ++r) {
        for (int c = 0; c < reference.size; ++c) {
            if (!pixel_selected(reference, reconstructed, roi_only, r, c)) continue;
            double xr = reconstructed.at(r, c);
            double d = xr - reference.at(r, c);
            sq_diff += d * d;
            sq_recon += xr * xr;
            abs_sum += std::abs(d);
            max_abs = std::max(max_abs, std::abs(d));
            ++count;
        }
    }
    if (sq_recon <= 0.0) {
        throw std::domain_error("rse undefined: reconstructed image is all zero");
    }
    ErrorReport rep;
    rep.rse = sq_diff / sq_recon;
    rep.me = count > 0 ? abs_sum / count : 0.0;
    rep.max_abs = max_abs;
    rep.n_pixels = count;
    rep.roi_only = roi_only;
    return rep;
}

double rse(const ImageGrid& reference, const ImageGrid& reconstructed) {
    return compare(reference, reconstructed).rse;
}

double rse_conventional(const ImageGrid& reference, const ImageGrid& reconstructed) {
    // Same sums with the denominator taken from the reference image.
    return compare(reconstructed, reference).rse;
}

double me(const ImageGrid& a, const ImageGrid& b) {
    check_same_size(a, b);
    double abs_sum = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) {
        abs_sum += std::abs(a.values[i] - b.values[i]);
    }
    return abs_sum / static_cast<double>(a.values.size());
}

ImageGrid diff_image(const ImageGrid& a, const ImageGrid& b) {
    check_same_size(a, b);
    ImageGrid out = a;
    for (size_t i = 0; i < out.values.size(); ++i) {
        out.values[i] = a.values[i] - b.values[i];
    }
    return out;
}

}  // namespace oped
