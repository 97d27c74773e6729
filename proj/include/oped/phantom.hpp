#pragma once

#include <vector>

#include "oped/image.hpp"
#include "oped/sinogram.hpp"

namespace oped {

/// One additive ellipse of an analytic phantom.
struct Ellipse {
    double cx = 0.0;     ///< center x, |center| < 1
    double cy = 0.0;     ///< center y
    double a = 0.0;      ///< semi-axis along the (rotated) x direction, > 0
    double b = 0.0;      ///< semi-axis along the (rotated) y direction, > 0
    double alpha = 0.0;  ///< rotation angle, radians
    double rho = 0.0;    ///< additive intensity, may be negative
};

/// Step-function phantom: the value at a point is the sum of rho over the
/// ellipses containing it. Construction checks that every ellipse has
/// positive semi-axes and fits inside the closed unit disk.
class EllipsePhantom {
  public:
    explicit EllipsePhantom(std::vector<Ellipse> ellipses);
    const std::vector<Ellipse>& ellipses() const { return ellipses_; }

  private:
    std::vector<Ellipse> ellipses_;
};

/// Bivariate polynomial in the monomial basis, coefficients c(i, j) for
/// x^i y^j with i + j <= degree. Used to exercise the exactness of the
/// reconstruction on polynomials.
class PolynomialField {
  public:
    explicit PolynomialField(int degree);
    int degree() const { return degree_; }
    double coeff(int i, int j) const { return coeffs_[index(i, j)]; }
    void set_coeff(int i, int j, double value) { coeffs_[index(i, j)] = value; }
    double eval(double x, double y) const;
    double coeff_l1_norm() const;

  private:
    size_t index(int i, int j) const;
    int degree_;
    std::vector<double> coeffs_;
};

/// The canonical ten-ellipse Shepp-Logan head phantom.
EllipsePhantom shepp_logan();

double eval_phantom(const EllipsePhantom& p, double x, double y);

/// Radon projection of one ellipse along the line x cos(phi) + y sin(phi) = t:
/// the standard chord formula 2 rho a b sqrt(s^2 - t'^2) / s^2, zero when the
/// line misses the ellipse.
double radon_ellipse(const Ellipse& e, double phi, double t);

/// Radon projection of a polynomial field by Gauss-Legendre quadrature along
/// the chord. The restriction of the field to a line is a univariate
/// polynomial of the same degree, so ceil((degree+1)/2) + 1 nodes integrate
/// it exactly. Returns 0 for |t| = 1; throws std::invalid_argument for |t| > 1.
double radon_polynomial(const PolynomialField& f, double phi, double t);

/// Exact sinogram g[nu][j] = Radon(phi_nu, t_j) of the phantom.
Sinogram project(const EllipsePhantom& p, const ScanGeometry& g);
Sinogram project(const PolynomialField& f, const ScanGeometry& g);

/// Point-sampled ground-truth image at the pixel centers (no anti-aliasing,
/// no mask; the recorded roi spans the whole grid).
ImageGrid rasterize(const EllipsePhantom& p, int size);
ImageGrid rasterize(const PolynomialField& f, int size);

}  // namespace oped
