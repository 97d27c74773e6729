#include "oped/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "oped/transforms.hpp"

namespace oped {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kChunk = 8;  // pixels evaluated together in the direct back projection

double resolve_roi(const ScanGeometry& g, const ReconstructionConfig& cfg) {
    const double rmax = roi_radius(g.m);
    const double r = cfg.roi.value_or(rmax);
    if (!(r > 0.0) || r > rmax) {
        throw std::invalid_argument("roi must lie in (0, cos(pi/(2m+1))] = (0, " +
                                    std::to_string(rmax) + "]; got " + std::to_string(r));
    }
    return r;
}

// Contiguous column span [first, last) of row r inside the mask circle.
std::pair<int, int> roi_span(int size, double roi, double y) {
    if (y * y > roi * roi) return {0, 0};
    int first = -1, last = -1;
    for (int c = 0; c < size; ++c) {
        double x = ImageGrid::pixel_x(size, c);
        if (x * x + y * y <= roi * roi) {
            if (first < 0) first = c;
            last = c;
        } else if (first >= 0) {
            break;
        }
    }
    if (first < 0) return {0, 0};
    return {first, last + 1};
}

// Kernel sum for one detector at t = cos(theta_nu), the defining
// (2m+1)-term series.
double kernel_direct_at(const ScanGeometry& g, int j, double t) {
    const int n = g.n_views();
    const double psi = g.psi[j];
    double acc = std::sin(psi);  // k = 0 term, U_0 = 1
    if (n > 1) {
        double b0 = 1.0, b1 = 2.0 * t;
        acc += 2.0 * std::sin(2.0 * psi) * b1;
        for (int k = 2; k < n; ++k) {
            double b2 = 2.0 * t * b1 - b0;
            acc += (k + 1.0) * std::sin((k + 1.0) * psi) * b2;
            b0 = b1;
            b1 = b2;
        }
    }
    return acc / (static_cast<double>(n) * n);
}

// Closed form of the kernel sum. The TypeI branch is the three-term formula
// with sin((2m+1)psi_j) = (-1)^j and cos((2m+1)psi_j) = 0 folded in; TypeII
// has the roles of those node values swapped, which collapses it to two
// terms. Near the removable singularities the series is used instead.
double kernel_compact_at(const ScanGeometry& g, int j, double t, double eps) {
    const int n = g.n_views();
    const double v = g.t[j];  // cos psi_j
    const double dc = v - t;
    const double st2 = 1.0 - t * t;
    if (std::abs(dc) < eps || st2 < eps * eps) {
        return kernel_direct_at(g, j, t);
    }
    const double st = std::sqrt(st2);
    const double theta = std::acos(t);
    const double sigma = (g.detector_label(j) % 2 == 0) ? 1.0 : -1.0;
    const double sN = std::sin(n * theta);
    const double cN = std::cos(n * theta);
    double val;
    if (g.variant == Variant::TypeI) {
        val = sigma * n * sN / (2.0 * st) - sigma * n * cN / (2.0 * dc) -
              (st * std::sin(g.psi[j]) - sigma * sN * (1.0 - t * v)) / (2.0 * st * dc * dc);
    } else {
        const double sp = std::sin(g.psi[j]);
        val = sigma * n * sp * sN / (2.0 * st * dc) -
              sp * (1.0 - sigma * cN) / (2.0 * dc * dc);
    }
    return val / (static_cast<double>(n) * n);
}

double clamped_cos_theta(const ScanGeometry& g, int nu, double x, double y) {
    return std::clamp(x * std::cos(g.phi[nu]) + y * std::sin(g.phi[nu]), -1.0, 1.0);
}

}  // namespace

double chebyshev_u(int k, double t) {
    if (k < 0) throw std::invalid_argument("chebyshev_u: degree must be >= 0");
    double b0 = 1.0;
    if (k == 0) return b0;
    double b1 = 2.0 * t;
    for (int i = 2; i <= k; ++i) {
        double b2 = 2.0 * t * b1 - b0;
        b0 = b1;
        b1 = b2;
    }
    return b1;
}

double kernel_direct(const ScanGeometry& g, int j, int nu, double x, double y) {
    return kernel_direct_at(g, j, clamped_cos_theta(g, nu, x, y));
}

double kernel_compact(const ScanGeometry& g, int j, int nu, double x, double y,
                      double singular_eps) {
    return kernel_compact_at(g, j, clamped_cos_theta(g, nu, x, y), singular_eps);
}

CoeffMatrix compute_coeffs(const Sinogram& s) {
    validate(s);
    const ScanGeometry& g = s.geometry;
    const int n = g.n_views();
    const SineTransformKind kind = g.variant == Variant::TypeI ? SineTransformKind::HalfNodeI
                                                               : SineTransformKind::IntegerNodeII;
    CoeffMatrix c;
    c.geometry = g;
    c.s.resize(static_cast<size_t>(n) * n);
    const double inv_n2 = 1.0 / (static_cast<double>(n) * n);
    for (int nu = 0; nu < n; ++nu) {
        std::vector<double> y = sine_transform_fast(
            kind, std::span<const double>(s.row(nu), static_cast<size_t>(g.n_detectors())));
        double* out = c.s.data() + static_cast<size_t>(nu) * n;
        for (int k = 0; k < n; ++k) {
            out[k] = (k + 1) * inv_n2 * y[k];
        }
    }
    return c;
}

AlphaTable compute_alpha(const CoeffMatrix& c) {
    const ScanGeometry& g = c.geometry;
    const int n = g.n_views();
    if (c.s.size() != static_cast<size_t>(n) * n) {
        throw std::invalid_argument("compute_alpha: coefficient matrix does not match geometry");
    }
    const SineTransformKind kind = g.variant == Variant::TypeI ? SineTransformKind::IntegerNodeI
                                                               : SineTransformKind::HalfNodeII;
    AlphaTable a;
    a.geometry = g;
    a.alpha.assign(static_cast<size_t>(n) * n, 0.0);
    for (int nu = 0; nu < n; ++nu) {
        std::vector<double> out = sine_transform_fast(
            kind, std::span<const double>(c.row(nu), static_cast<size_t>(n)));
        // TypeI rows get 2m values plus the terminal alpha(pi) = 0 already
        // present from the zero fill.
        std::copy(out.begin(), out.end(), a.alpha.begin() + static_cast<size_t>(nu) * n);
    }
    return a;
}

ImageGrid synthesize_direct(const CoeffMatrix& c, int grid_size, const ReconstructionConfig& cfg) {
    const ScanGeometry& g = c.geometry;
    const int n = g.n_views();
    if (c.s.size() != static_cast<size_t>(n) * n) {
        throw std::invalid_argument("synthesize_direct: coefficient matrix does not match geometry");
    }
    const double roi = resolve_roi(g, cfg);
    ImageGrid img = make_image(grid_size, roi, cfg.fill);

    std::vector<double> cphi(n), sphi(n);
    for (int nu = 0; nu < n; ++nu) {
        cphi[nu] = std::cos(g.phi[nu]);
        sphi[nu] = std::sin(g.phi[nu]);
    }
    const double* s = c.s.data();

#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < grid_size; ++r) {
        const double y = ImageGrid::pixel_y(grid_size, r);
        const auto [col0, col1] = roi_span(grid_size, roi, y);
        for (int cc = col0; cc < col1; cc += kChunk) {
            const int w = std::min(kChunk, col1 - cc);
            double xs[kChunk], acc[kChunk];
            for (int i = 0; i < w; ++i) {
                xs[i] = ImageGrid::pixel_x(grid_size, cc + i);
                acc[i] = 0.0;
            }
            for (int nu = 0; nu < n; ++nu) {
                const double* row = s + static_cast<size_t>(nu) * n;
                const double cp = cphi[nu], sp = sphi[nu];
                double tt[kChunk], b0[kChunk], b1[kChunk], sum[kChunk];
                for (int i = 0; i < w; ++i) {
                    tt[i] = std::clamp(xs[i] * cp + y * sp, -1.0, 1.0);
                    b0[i] = 1.0;
                    b1[i] = 2.0 * tt[i];
                    sum[i] = row[0];
                }
                for (int i = 0; i < w; ++i) sum[i] += row[1] * b1[i];
                for (int k = 2; k < n; ++k) {
                    const double sk = row[k];
                    for (int i = 0; i < w; ++i) {
                        const double b2 = 2.0 * tt[i] * b1[i] - b0[i];
                        sum[i] += sk * b2;
                        b0[i] = b1[i];
                        b1[i] = b2;
                    }
                }
                for (int i = 0; i < w; ++i) acc[i] += sum[i];
            }
            for (int i = 0; i < w; ++i) img.at(r, cc + i) = acc[i];
        }
    }
    return img;
}

double evaluate_direct(const CoeffMatrix& c, double x, double y) {
    const ScanGeometry& g = c.geometry;
    const int n = g.n_views();
    double acc = 0.0;
    for (int nu = 0; nu < n; ++nu) {
        const double* row = c.row(nu);
        const double t = clamped_cos_theta(g, nu, x, y);
        double b0 = 1.0, b1 = 2.0 * t;
        double sum = row[0];
        sum += row[1] * b1;
        for (int k = 2; k < n; ++k) {
            const double b2 = 2.0 * t * b1 - b0;
            sum += row[k] * b2;
            b0 = b1;
            b1 = b2;
        }
        acc += sum;
    }
    return acc;
}

namespace {

// One fast-route term: linear interpolation of the alpha row at theta,
// divided by sin(theta). Shared by the grid loop and point evaluation so
// both produce identical bits.
inline double fast_term(const double* arow, int two_m, bool type1, double n_over_pi,
                        double t) {
    const double theta = std::acos(t);
    const double st = std::sqrt(1.0 - t * t);
    const double s = theta * n_over_pi;
    int l;
    double u;
    if (type1) {
        l = static_cast<int>(s) - 1;
        l = std::clamp(l, 0, two_m - 1);
        u = s - (l + 1);
    } else {
        l = static_cast<int>(s - 0.5);
        l = std::clamp(l, 0, two_m - 1);
        u = s - (l + 0.5);
    }
    return ((1.0 - u) * arow[l] + u * arow[l + 1]) / st;
}

}  // namespace

ImageGrid synthesize_fast(const AlphaTable& a, int grid_size, const ReconstructionConfig& cfg) {
    const ScanGeometry& g = a.geometry;
    const int n = g.n_views();
    if (a.alpha.size() != static_cast<size_t>(n) * n) {
        throw std::invalid_argument("synthesize_fast: alpha table does not match geometry");
    }
    const double roi = resolve_roi(g, cfg);
    ImageGrid img = make_image(grid_size, roi, cfg.fill);

    std::vector<double> cphi(n), sphi(n);
    for (int nu = 0; nu < n; ++nu) {
        cphi[nu] = std::cos(g.phi[nu]);
        sphi[nu] = std::sin(g.phi[nu]);
    }
    const bool type1 = g.variant == Variant::TypeI;
    const double n_over_pi = n / kPi;
    const int two_m = 2 * g.m;
    const double* alpha = a.alpha.data();

#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < grid_size; ++r) {
        const double y = ImageGrid::pixel_y(grid_size, r);
        const auto [col0, col1] = roi_span(grid_size, roi, y);
        for (int col = col0; col < col1; ++col) {
            const double x = ImageGrid::pixel_x(grid_size, col);
            double acc = 0.0;
            for (int nu = 0; nu < n; ++nu) {
                const double t = std::clamp(x * cphi[nu] + y * sphi[nu], -1.0, 1.0);
                acc += fast_term(alpha + static_cast<size_t>(nu) * n, two_m, type1,
                                 n_over_pi, t);
            }
            img.at(r, col) = acc;
        }
    }
    return img;
}

double evaluate_fast(const AlphaTable& a, double x, double y) {
    const ScanGeometry& g = a.geometry;
    const int n = g.n_views();
    const bool type1 = g.variant == Variant::TypeI;
    const double n_over_pi = n / kPi;
    double acc = 0.0;
    for (int nu = 0; nu < n; ++nu) {
        const double t = clamped_cos_theta(g, nu, x, y);
        acc += fast_term(a.row(nu), 2 * g.m, type1, n_over_pi, t);
    }
    return acc;
}

ImageGrid oped_direct(const Sinogram& s, int grid_size, const ReconstructionConfig& cfg) {
    return synthesize_direct(compute_coeffs(s), grid_size, cfg);
}

ImageGrid oped_fast(const Sinogram& s, int grid_size, const ReconstructionConfig& cfg) {
    return synthesize_fast(compute_alpha(compute_coeffs(s)), grid_size, cfg);
}

ImageGrid oped_kernel_sum(const Sinogram& s, int grid_size, const ReconstructionConfig& cfg) {
    validate(s);
    const ScanGeometry& g = s.geometry;
    const double roi = resolve_roi(g, cfg);
    ImageGrid img = make_image(grid_size, roi, cfg.fill);
    const int nv = g.n_views(), nd = g.n_detectors();
    const bool compact = cfg.kernel == KernelForm::CompactFormula;

#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < grid_size; ++r) {
        const double y = ImageGrid::pixel_y(grid_size, r);
        const auto [col0, col1] = roi_span(grid_size, roi, y);
        for (int col = col0; col < col1; ++col) {
            const double x = ImageGrid::pixel_x(grid_size, col);
            double acc = 0.0;
            for (int nu = 0; nu < nv; ++nu) {
                const double t = clamped_cos_theta(g, nu, x, y);
                const double* grow = s.row(nu);
                double sum = 0.0;
                for (int j = 0; j < nd; ++j) {
                    const double kernel = compact ? kernel_compact_at(g, j, t, cfg.singular_eps)
                                                  : kernel_direct_at(g, j, t);
                    sum += grow[j] * kernel;
                }
                acc += sum;
            }
            img.at(r, col) = acc;
        }
    }
    return img;
}

ImageGrid reconstruct(const Sinogram& s, int grid_size, const ReconstructionConfig& cfg) {
    return cfg.method == Method::Direct ? oped_direct(s, grid_size, cfg)
                                        : oped_fast(s, grid_size, cfg);
}

double lebesgue_estimate(const ScanGeometry& g,
                         std::span<const std::pair<double, double>> points) {
    const int nv = g.n_views(), nd = g.n_detectors();
    std::vector<double> sin_psi(nd);
    for (int j = 0; j < nd; ++j) sin_psi[j] = std::sin(g.psi[j]);

    double best = 0.0;
#pragma omp parallel for reduction(max : best)
    for (size_t p = 0; p < points.size(); ++p) {
        const auto [x, y] = points[p];
        if (x * x + y * y > 1.0) {
            continue;  // outside the disk; the samplers never produce this
        }
        double total = 0.0;
        for (int nu = 0; nu < nv; ++nu) {
            const double t = clamped_cos_theta(g, nu, x, y);
            for (int j = 0; j < nd; ++j) {
                total += sin_psi[j] * std::abs(kernel_compact_at(g, j, t, 1e-3));
            }
        }
        best = std::max(best, total);
    }
    return best;
}

std::vector<std::pair<double, double>> lebesgue_sample_points(const ScanGeometry& g,
                                                              int n_radii, int n_angles) {
    const double rmax = roi_radius(g.m);
    std::vector<std::pair<double, double>> pts;
    pts.reserve(static_cast<size_t>(n_radii) * n_angles + 1);
    pts.emplace_back(0.0, 0.0);
    for (int i = 1; i <= n_radii; ++i) {
        const double r = rmax * i / n_radii;
        for (int a = 0; a < n_angles; ++a) {
            const double ang = 2.0 * kPi * a / n_angles;
            pts.emplace_back(r * std::cos(ang), r * std::sin(ang));
        }
    }
    return pts;
}

}  // namespace oped
