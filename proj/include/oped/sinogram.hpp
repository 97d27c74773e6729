#pragma once

#include <vector>

#include "oped/geometry.hpp"

namespace oped {

/// Radon line integrals g[nu][j] sampled on a ScanGeometry, stored view-major.
struct Sinogram {
    ScanGeometry geometry;
    std::vector<double> data;  ///< size n_views() * n_detectors()

    double& at(int nu, int j) { return data[static_cast<size_t>(nu) * geometry.n_detectors() + j]; }
    double at(int nu, int j) const { return data[static_cast<size_t>(nu) * geometry.n_detectors() + j]; }
    const double* row(int nu) const { return data.data() + static_cast<size_t>(nu) * geometry.n_detectors(); }
};

/// Zero-filled sinogram matching the geometry's dimensions.
Sinogram make_sinogram(ScanGeometry geometry);

/// Throws std::invalid_argument if dimensions disagree or entries are not finite.
void validate(const Sinogram& s);

}  // namespace oped
