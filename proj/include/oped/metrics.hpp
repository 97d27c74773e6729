#pragma once

#include <cstdint>
#include <string>

#include "oped/image.hpp"

namespace oped {

struct ErrorReport {
    double rse = 0.0;
    double me = 0.0;
    double max_abs = 0.0;
    std::int64_t n_pixels = 0;
    bool roi_only = false;

    std::string to_json() const;
};

/// Relative square total error between reference X and reconstruction X^R:
///   sum_i (X^R_i - X_i)^2 / sum_i (X^R_i)^2.
/// The denominator is the *reconstructed* image, so the metric is not
/// symmetric. Throws std::domain_error when the reconstruction is all zero.
double rse(const ImageGrid& reference, const ImageGrid& reconstructed);

/// Conventional variant normalized by the reference instead; never used for
/// acceptance numbers.
double rse_conventional(const ImageGrid& reference, const ImageGrid& reconstructed);

/// Mean absolute pixel difference over all pixels.
double me(const ImageGrid& a, const ImageGrid& b);

/// Pixelwise a - b; keeps a's mask metadata.
ImageGrid diff_image(const ImageGrid& a, const ImageGrid& b);

/// Full report. With roi_only, the sums run only over pixels inside the
/// smaller of the two mask radii.
ErrorReport compare(const ImageGrid& reference, const ImageGrid& reconstructed,
                    bool roi_only = false);

}  // namespace oped
