#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "oped/image.hpp"
#include "oped/sinogram.hpp"

namespace oped {

/// Per-view sine coefficients S[nu][k] = (k+1)/(2m+1)^2 *
/// sum_j g[nu][j] sin((k+1) psi_j), stored view-major, (2m+1) x (2m+1).
struct CoeffMatrix {
    ScanGeometry geometry;
    std::vector<double> s;

    int width() const { return geometry.n_views(); }
    const double* row(int nu) const { return s.data() + static_cast<size_t>(nu) * width(); }
};

/// Values alpha[nu][l] of the sine series sum_k S[nu][k] sin((k+1) theta) at
/// the interpolation nodes xi_l. Rows have 2m+1 entries for both variants:
/// TypeI stores l = 0..2m-1 plus a terminal alpha(pi) = 0, which the
/// interpolation may touch with weight zero at the outer rim of the ROI;
/// TypeII stores l = 0..2m.
struct AlphaTable {
    ScanGeometry geometry;
    std::vector<double> alpha;

    int width() const { return geometry.n_views(); }
    const double* row(int nu) const { return alpha.data() + static_cast<size_t>(nu) * width(); }
};

enum class Method { Direct, Fast };
enum class KernelForm { CompactFormula, DirectSum };

struct ReconstructionConfig {
    Method method = Method::Direct;
    KernelForm kernel = KernelForm::CompactFormula;  ///< used by the kernel-sum route
    std::optional<double> roi;   ///< mask radius; defaults to roi_radius(m); must not exceed it
    double singular_eps = 1e-3;  ///< compact-formula fallback threshold
    double fill = 0.0;           ///< value written outside the ROI
};

/// Chebyshev polynomial of the second kind by the three-term recurrence
/// U_0 = 1, U_1 = 2t, U_{k+1} = 2t U_k - U_{k-1}. Stable on [-1, 1] and free
/// of the 0/0 the trigonometric form has at t = +-1.
double chebyshev_u(int k, double t);

/// Kernel T[j][nu](x, y): the defining (2m+1)-term sum over Chebyshev
/// polynomials. O(m) per call; reference path.
double kernel_direct(const ScanGeometry& g, int j, int nu, double x, double y);

/// Same kernel through the closed form, O(1) per call. Near the removable
/// singularities (|cos psi_j - cos theta_nu| or sin theta_nu below
/// singular_eps) it falls back to kernel_direct. The closed form subtracts
/// two terms that each grow like 1/(cos psi_j - cos theta_nu)^2, so the
/// threshold has to stay around 1e-3 for the surviving digits to reach
/// 1e-9 agreement with the series; tightening it below that trades
/// correctness for nothing measurable.
double kernel_compact(const ScanGeometry& g, int j, int nu, double x, double y,
                      double singular_eps = 1e-3);

/// Step 1: one fast sine transform per view.
CoeffMatrix compute_coeffs(const Sinogram& s);

/// Step 2: one fast sine transform per view, TypeI terminal entry appended.
AlphaTable compute_alpha(const CoeffMatrix& c);

/// Direct reconstruction, evaluated per pixel as
/// sum_nu sum_k S[nu][k] U_k(x cos phi_nu + y sin phi_nu).
ImageGrid oped_direct(const Sinogram& s, int grid_size, const ReconstructionConfig& cfg = {});

/// Fast reconstruction: per pixel and view, linear interpolation of the
/// alpha table at theta_nu divided by sin(theta_nu), summed over views in
/// ascending order.
ImageGrid oped_fast(const Sinogram& s, int grid_size, const ReconstructionConfig& cfg = {});

/// Literal double sum over g[j][nu] * T[j][nu](x, y) with the configured
/// kernel form. O(m) slower per pixel than oped_direct; kept as the
/// independent cross-check of the coefficient route.
ImageGrid oped_kernel_sum(const Sinogram& s, int grid_size, const ReconstructionConfig& cfg = {});

/// Dispatches on cfg.method.
ImageGrid reconstruct(const Sinogram& s, int grid_size, const ReconstructionConfig& cfg);

/// Back-projection stages separated from the transform stages, so callers
/// can time or reuse them; oped_direct/oped_fast are thin wrappers.
ImageGrid synthesize_direct(const CoeffMatrix& c, int grid_size, const ReconstructionConfig& cfg = {});
ImageGrid synthesize_fast(const AlphaTable& a, int grid_size, const ReconstructionConfig& cfg = {});

/// Single-point evaluation of either route (no ROI masking; the caller keeps
/// x^2 + y^2 <= 1, and for the fast route inside the ROI disk).
double evaluate_direct(const CoeffMatrix& c, double x, double y);
double evaluate_fast(const AlphaTable& a, double x, double y);

/// max over the sample points of sum_nu sum_j sin(psi_j) |T[j][nu](x, y)|,
/// a sampled lower bound for the operator norm of the reconstruction.
double lebesgue_estimate(const ScanGeometry& g, std::span<const std::pair<double, double>> points);

/// Deterministic sample set for lebesgue_estimate: concentric circles inside
/// the ROI disk plus the center.
std::vector<std::pair<double, double>> lebesgue_sample_points(const ScanGeometry& g,
                                                              int n_radii, int n_angles);

}  // namespace oped
