#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oped/metrics.hpp"

using namespace oped;

namespace {

ImageGrid grid_of(int size, std::initializer_list<double> vals, double roi = 2.0) {
    ImageGrid g = make_image(size, roi, 0.0);
    size_t i = 0;
    for (double v : vals) g.values[i++] = v;
    return g;
}

ImageGrid random_grid(std::mt19937& rng, int size) {
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    ImageGrid g = make_image(size, 2.0, 0.0);
    for (double& v : g.values) v = dist(rng);
    return g;
}

}  // namespace

TEST_CASE("rse examples") {
    ImageGrid x = grid_of(2, {1, 1, 0, 0});
    ImageGrid xr = grid_of(2, {2, 2, 0, 0});
    // denominator is the reconstructed image
    CHECK(rse(x, xr) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(rse(x, x) == 0.0);
}

TEST_CASE("rse is asymmetric, the conventional variant flips the denominator") {
    ImageGrid x = grid_of(2, {1, 1, 0, 0});
    ImageGrid xr = grid_of(2, {2, 2, 0, 0});
    CHECK(rse(x, xr) == doctest::Approx(0.25));
    CHECK(rse(xr, x) == doctest::Approx(1.0));  // denominator 1^2+1^2 = 2, diff 2
    CHECK(rse_conventional(x, xr) == doctest::Approx(rse(xr, x)));
    CHECK(rse(x, xr) != rse(xr, x));
}

TEST_CASE("rse scale behavior") {
    std::mt19937 rng(9);
    ImageGrid a = random_grid(rng, 8), b = random_grid(rng, 8);
    double base = rse(a, b);
    ImageGrid a2 = a, b2 = b;
    for (double& v : a2.values) v *= 3.0;
    for (double& v : b2.values) v *= 3.0;
    CHECK(rse(a2, b2) == doctest::Approx(base).epsilon(1e-13));
    // scaling only the reconstruction changes the value
    CHECK(std::abs(rse(a, b2) - base) > 1e-6);
}

TEST_CASE("rse rejects an all-zero reconstruction") {
    ImageGrid x = grid_of(2, {1, 1, 1, 1});
    ImageGrid zero = grid_of(2, {0, 0, 0, 0});
    CHECK_THROWS_AS(rse(x, zero), std::domain_error);
}

TEST_CASE("me examples and symmetry") {
    ImageGrid x = grid_of(2, {0, 2, 0, 0});
    ImageGrid xr = grid_of(2, {1, 1, 0, 0});
    CHECK(me(x, xr) == doctest::Approx(0.5).epsilon(1e-15));  // |0-1|+|2-1| over 4 pixels
    CHECK(me(x, x) == 0.0);
    std::mt19937 rng(17);
    ImageGrid a = random_grid(rng, 6), b = random_grid(rng, 6);
    CHECK(me(a, b) == me(b, a));
}

TEST_CASE("me triangle inequality") {
    std::mt19937 rng(23);
    ImageGrid a = random_grid(rng, 7), b = random_grid(rng, 7), c = random_grid(rng, 7);
    CHECK(me(a, c) <= me(a, b) + me(b, c) + 1e-14);
}

TEST_CASE("diff_image antisymmetry") {
    std::mt19937 rng(31);
    ImageGrid a = random_grid(rng, 5), b = random_grid(rng, 5);
    ImageGrid ab = diff_image(a, b), ba = diff_image(b, a);
    for (size_t i = 0; i < ab.values.size(); ++i) {
        CHECK(ab.values[i] == -ba.values[i]);
    }
    ImageGrid self = diff_image(a, a);
    for (double v : self.values) CHECK(v == 0.0);
}

TEST_CASE("dimension mismatch is rejected") {
    ImageGrid a = make_image(4, 1.0), b = make_image(5, 1.0);
    CHECK_THROWS_AS(me(a, b), std::invalid_argument);
    CHECK_THROWS_AS(rse(a, b), std::invalid_argument);
    CHECK_THROWS_AS(diff_image(a, b), std::invalid_argument);
    CHECK_THROWS_AS(compare(a, b), std::invalid_argument);
}

TEST_CASE("compare report fields") {
    ImageGrid x = grid_of(2, {1, 1, 0, 0});
    ImageGrid xr = grid_of(2, {2, 2, 0, 0});
    ErrorReport rep = compare(x, xr);
    CHECK(rep.rse == doctest::Approx(0.25));
    CHECK(rep.me == doctest::Approx(0.5));
    CHECK(rep.max_abs == doctest::Approx(1.0));
    CHECK(rep.n_pixels == 4);
    CHECK(rep.max_abs >= rep.me);
    CHECK(!rep.roi_only);
    CHECK(rep.to_json().find("\"rse\":0.25") != std::string::npos);
}

TEST_CASE("roi-only restriction uses the smaller mask") {
    ImageGrid a = make_image(16, 0.5, 0.0);
    ImageGrid b = make_image(16, 0.9, 0.0);
    for (double& v : a.values) v = 1.0;
    // difference only outside radius 0.5: must vanish from the roi-only report
    for (int r = 0; r < 16; ++r) {
        for (int c = 0; c < 16; ++c) {
            b.at(r, c) = a.in_roi(r, c) ? 1.0 : 5.0;
        }
    }
    ErrorReport all = compare(a, b, false);
    ErrorReport roi = compare(a, b, true);
    CHECK(all.max_abs == 4.0);
    CHECK(roi.max_abs == 0.0);
    CHECK(roi.rse == 0.0);
    CHECK(roi.n_pixels < all.n_pixels);
    CHECK(roi.roi_only);
}
