#include "oped/phantom.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace oped {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kContainTol = 1e-12;

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
// Legendre recurrence.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

}  // namespace

EllipsePhantom::EllipsePhantom(std::vector<Ellipse> ellipses) : ellipses_(std::move(ellipses)) {
    if (ellipses_.empty()) {
        throw std::invalid_argument("phantom: ellipse list is empty");
    }
    for (const Ellipse& e : ellipses_) {
        if (!(e.a > 0.0) || !(e.b > 0.0)) {
            throw std::invalid_argument("phantom: semi-axes must be positive");
        }
        double reach = std::hypot(e.cx, e.cy) + std::max(e.a, e.b);
        if (reach > 1.0 + kContainTol) {
            throw std::invalid_argument("phantom: ellipse leaves the unit disk (reach " +
                                        std::to_string(reach) + ")");
        }
    }
}

EllipsePhantom shepp_logan() {
    // Canonical ten-ellipse table (a, b, cx, cy, alpha in degrees, rho).
    struct Row {
        double a, b, cx, cy, alpha_deg, rho;
    };
    static const Row rows[] = {
        {0.69, 0.92, 0.0, 0.0, 0.0, 2.0},
        {0.6624, 0.874, 0.0, -0.0184, 0.0, -0.98},
        {0.11, 0.31, 0.22, 0.0, -18.0, -0.02},
        {0.16, 0.41, -0.22, 0.0, 18.0, -0.02},
        {0.21, 0.25, 0.0, 0.35, 0.0, 0.01},
        {0.046, 0.046, 0.0, 0.1, 0.0, 0.01},
        {0.046, 0.046, 0.0, -0.1, 0.0, 0.01},
        {0.046, 0.023, -0.08, -0.605, 0.0, 0.01},
        {0.023, 0.023, 0.0, -0.605, 0.0, 0.01},
        {0.023, 0.046, 0.06, -0.605, 0.0, 0.01},
    };
    std::vector<Ellipse> es;
    es.reserve(std::size(rows));
    for (const Row& r : rows) {
        es.push_back({r.cx, r.cy, r.a, r.b, r.alpha_deg * kPi / 180.0, r.rho});
    }
    return EllipsePhantom(std::move(es));
}

double eval_phantom(const EllipsePhantom& p, double x, double y) {
    double v = 0.0;
    for (const Ellipse& e : p.ellipses()) {
        double dx = x - e.cx, dy = y - e.cy;
        double ca = std::cos(e.alpha), sa = std::sin(e.alpha);
        double xr = (dx * ca + dy * sa) / e.a;
        double yr = (-dx * sa + dy * ca) / e.b;
        if (xr * xr + yr * yr <= 1.0) v += e.rho;
    }
    return v;
}

double radon_ellipse(const Ellipse& e, double phi, double t) {
    double tp = t - e.cx * std::cos(phi) - e.cy * std::sin(phi);
    double gamma = phi - e.alpha;
    double cg = std::cos(gamma), sg = std::sin(gamma);
    double s2 = e.a * e.a * cg * cg + e.b * e.b * sg * sg;
    if (tp * tp >= s2) return 0.0;
    return 2.0 * e.rho * e.a * e.b * std::sqrt(s2 - tp * tp) / s2;
}

PolynomialField::PolynomialField(int degree) : degree_(degree) {
    if (degree < 0) throw std::invalid_argument("polynomial degree must be >= 0");
    coeffs_.assign(static_cast<size_t>(degree + 1) * (degree + 2) / 2, 0.0);
}

size_t PolynomialField::index(int i, int j) const {
    if (i < 0 || j < 0 || i + j > degree_) {
        throw std::out_of_range("polynomial coefficient index out of range");
    }
    // Triangular layout: all coefficients of total degree d precede degree d+1.
    int d = i + j;
    return static_cast<size_t>(d) * (d + 1) / 2 + j;
}

double PolynomialField::eval(double x, double y) const {
    // Horner in x over inner Horner polynomials in y.
    double v = 0.0;
    for (int i = degree_; i >= 0; --i) {
        double inner = 0.0;
        for (int j = degree_ - i; j >= 0; --j) {
            int d = i + j;
            inner = inner * y + coeffs_[static_cast<size_t>(d) * (d + 1) / 2 + j];
        }
        v = v * x + inner;
    }
    return v;
}

double PolynomialField::coeff_l1_norm() const {
    double s = 0.0;
    for (double c : coeffs_) s += std::abs(c);
    return s;
}

double radon_polynomial(const PolynomialField& f, double phi, double t) {
    if (std::abs(t) > 1.0) {
        throw std::invalid_argument("radon_polynomial: |t| must be <= 1");
    }
    double half = std::sqrt(std::max(0.0, 1.0 - t * t));
    if (half == 0.0) return 0.0;

    int n_nodes = (f.degree() + 1) / 2 + 2;  // ceil((d+1)/2) + 1 >= exactness
    std::vector<double> nodes, weights;
    gauss_legendre(n_nodes, nodes, weights);

    double cp = std::cos(phi), sp = std::sin(phi);
    double acc = 0.0;
    for (int q = 0; q < n_nodes; ++q) {
        double s = nodes[q] * half;
        acc += weights[q] * f.eval(t * cp - s * sp, t * sp + s * cp);
    }
    return acc * half;
}

namespace {

template <typename RadonFn>
Sinogram project_with(const ScanGeometry& g, RadonFn&& radon) {
    Sinogram s = make_sinogram(g);
    const int nv = g.n_views(), nd = g.n_detectors();
    for (int nu = 0; nu < nv; ++nu) {
        for (int j = 0; j < nd; ++j) {
            s.at(nu, j) = radon(g.phi[nu], g.t[j]);
        }
    }
    return s;
}

}  // namespace

Sinogram project(const EllipsePhantom& p, const ScanGeometry& g) {
    return project_with(g, [&p](double phi, double t) {
        double v = 0.0;
        for (const Ellipse& e : p.ellipses()) v += radon_ellipse(e, phi, t);
        return v;
    });
}

Sinogram project(const PolynomialField& f, const ScanGeometry& g) {
    return project_with(g, [&f](double phi, double t) { return radon_polynomial(f, phi, t); });
}

namespace {

template <typename EvalFn>
ImageGrid rasterize_with(int size, EvalFn&& eval) {
    ImageGrid img = make_image(size, /*roi=*/2.0, /*fill=*/0.0);
    for (int r = 0; r < size; ++r) {
        double y = ImageGrid::pixel_y(size, r);
        for (int c = 0; c < size; ++c) {
            img.at(r, c) = eval(ImageGrid::pixel_x(size, c), y);
        }
    }
    return img;
}

}  // namespace

ImageGrid rasterize(const EllipsePhantom& p, int size) {
    return rasterize_with(size, [&p](double x, double y) { return eval_phantom(p, x, y); });
}

ImageGrid rasterize(const PolynomialField& f, int size) {
    return rasterize_with(size, [&f](double x, double y) { return f.eval(x, y); });
}

}  // namespace oped
