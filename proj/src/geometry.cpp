#include "oped/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace oped {

namespace {
constexpr double kPi = std::numbers::pi;
}

ScanGeometry build_geometry(int m, Variant variant, int max_order) {
    if (m < 1) {
        throw std::invalid_argument("build_geometry: m must be >= 1, got " + std::to_string(m));
    }
    if (m > max_order) {
        throw std::invalid_argument("build_geometry: m = " + std::to_string(m) +
                                    " exceeds the maximum " + std::to_string(max_order));
    }

    const int n = 2 * m + 1;
    ScanGeometry g;
    g.m = m;
    g.variant = variant;

    g.phi.resize(n);
    for (int nu = 0; nu < n; ++nu) {
        g.phi[nu] = 2.0 * kPi * nu / n;
    }

    if (variant == Variant::TypeI) {
        g.psi.resize(n);
        g.xi.resize(2 * m);
        for (int j = 0; j < n; ++j) {
            g.psi[j] = (2.0 * j + 1.0) * kPi / (4 * m + 2);
        }
        for (int l = 0; l < 2 * m; ++l) {
            g.xi[l] = (l + 1.0) * kPi / n;
        }
    } else {
        g.psi.resize(2 * m);
        g.xi.resize(n);
        for (int j = 1; j <= 2 * m; ++j) {
            g.psi[j - 1] = j * kPi / n;
        }
        for (int l = 0; l < n; ++l) {
            g.xi[l] = (l + 0.5) * kPi / n;
        }
    }

    g.t.resize(g.psi.size());
    for (size_t j = 0; j < g.psi.size(); ++j) {
        g.t[j] = std::cos(g.psi[j]);
    }
    return g;
}

double theta(const ScanGeometry& g, int nu, double x, double y) {
    double c = x * std::cos(g.phi[nu]) + y * std::sin(g.phi[nu]);
    return std::acos(std::clamp(c, -1.0, 1.0));
}

double roi_radius(int m) {
    if (m < 1) {
        throw std::invalid_argument("roi_radius: m must be >= 1");
    }
    return std::cos(kPi / (2 * m + 1));
}

}  // namespace oped
