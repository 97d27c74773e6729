#pragma once

#include <vector>

namespace oped {

/// Sampling variant of the scan. TypeI places the detector offsets at the
/// zeros of the Chebyshev polynomial of the first kind (2m+1 detectors,
/// j = 0..2m); TypeII uses the zeros of the second kind (2m detectors,
/// j = 1..2m).
enum class Variant { TypeI = 1, TypeII = 2 };

/// All angle and node sets of a parallel-beam scan of order m.
///
/// Every array is computed by direct per-index formula, never by
/// accumulation, so large m does not drift. Instances are immutable after
/// construction and safe to share across threads.
struct ScanGeometry {
    int m = 0;
    Variant variant = Variant::TypeI;

    std::vector<double> phi;  ///< view angles phi_nu = 2*pi*nu/(2m+1), nu = 0..2m
    std::vector<double> psi;  ///< detector angles, strictly increasing in (0, pi)
    std::vector<double> t;    ///< detector offsets t_j = cos(psi_j), in (-1, 1)
    std::vector<double> xi;   ///< interpolation nodes, strictly increasing in (0, pi)

    int n_views() const { return static_cast<int>(phi.size()); }
    int n_detectors() const { return static_cast<int>(psi.size()); }

    /// Detector index as printed in the node formulas (TypeII starts at j = 1).
    int detector_label(int index) const {
        return variant == Variant::TypeI ? index : index + 1;
    }
};

/// Largest m accepted by default; geometry arrays stay comfortably in memory
/// below this and the angle formulas keep full double precision.
inline constexpr int kDefaultMaxOrder = 1 << 15;

/// Builds the node sets for order m. Throws std::invalid_argument when
/// m < 1 or m > max_order.
ScanGeometry build_geometry(int m, Variant variant, int max_order = kDefaultMaxOrder);

/// theta_nu(x, y) = arccos(x cos(phi_nu) + y sin(phi_nu)), the angular
/// coordinate of (x, y) seen from view nu. The inner product is clamped to
/// [-1, 1] so points on the disk boundary cannot produce NaN.
double theta(const ScanGeometry& g, int nu, double x, double y);

/// Radius cos(pi/(2m+1)) of the reconstruction disk. Inside it the
/// interpolation index of the fast algorithm is always in range and
/// sin(theta_nu) stays >= sin(pi/(2m+1)).
double roi_radius(int m);

}  // namespace oped
