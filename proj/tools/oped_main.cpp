// Command-line front end: phantom rasterization, projection, reconstruction,
// comparison, benchmarking and a convergence sweep. Machine-readable JSON on
// stdout, human progress on stderr.
//
// Exit codes: 0 success, 2 usage/validation, 3 I/O, 4 numeric failure.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "oped/geometry.hpp"
#include "oped/io.hpp"
#include "oped/metrics.hpp"
#include "oped/phantom.hpp"
#include "oped/reconstruct.hpp"

using nlohmann::json;
using namespace oped;

namespace {

struct NumericFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

using PhantomSpec = std::variant<EllipsePhantom, PolynomialField>;

PolynomialField smooth_bump() {
    // (1 - x^2 - y^2)^3, the built-in C-infinity test image
    PolynomialField f(6);
    f.set_coeff(0, 0, 1.0);
    f.set_coeff(2, 0, -3.0);
    f.set_coeff(0, 2, -3.0);
    f.set_coeff(4, 0, 3.0);
    f.set_coeff(2, 2, 6.0);
    f.set_coeff(0, 4, 3.0);
    f.set_coeff(6, 0, -1.0);
    f.set_coeff(4, 2, -3.0);
    f.set_coeff(2, 4, -3.0);
    f.set_coeff(0, 6, -1.0);
    return f;
}

EllipsePhantom phantom_from_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(IoError::Kind::OpenFailed, "cannot open phantom file " + path);
    try {
        json j;
        in >> j;
        std::vector<Ellipse> es;
        for (const json& e : j.at("ellipses")) {
            es.push_back({e.at("cx").get<double>(), e.at("cy").get<double>(),
                          e.at("a").get<double>(), e.at("b").get<double>(),
                          e.at("alpha_deg").get<double>() * std::numbers::pi / 180.0,
                          e.at("rho").get<double>()});
        }
        return EllipsePhantom(std::move(es));
    } catch (const json::exception& ex) {
        throw std::invalid_argument("bad phantom JSON in " + path + ": " + ex.what());
    }
}

PhantomSpec load_phantom(const std::string& name) {
    if (name == "shepp-logan") return shepp_logan();
    if (name == "disk") return EllipsePhantom({{0.0, 0.0, 1.0, 1.0, 0.0, 1.0}});
    if (name == "smooth") return smooth_bump();
    if (name.size() > 5 && name.substr(name.size() - 5) == ".json") {
        return phantom_from_json(name);
    }
    throw std::invalid_argument("unknown phantom '" + name +
                                "' (expected shepp-logan, disk, smooth or a .json file)");
}

Sinogram project_phantom(const PhantomSpec& p, const ScanGeometry& g) {
    return std::visit([&g](const auto& ph) { return project(ph, g); }, p);
}

ImageGrid rasterize_phantom(const PhantomSpec& p, int size) {
    return std::visit([size](const auto& ph) { return rasterize(ph, size); }, p);
}

void require_finite(const ImageGrid& img) {
    for (double v : img.values) {
        if (!std::isfinite(v)) throw NumericFailure("non-finite value in reconstructed image");
    }
}

void require_finite(const Sinogram& s) {
    for (double v : s.data) {
        if (!std::isfinite(v)) throw NumericFailure("non-finite value in sinogram");
    }
}

void write_image_outputs(const std::string& out, const ImageGrid& img) {
    write_image(out, img);
    export_pgm(out + ".pgm", img);
}

int run(int argc, char** argv) {
    CLI::App app{"OPED reconstruction of parallel-beam Radon data on the unit disk"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "cap the worker thread count")->envname("OPED_THREADS");

    // phantom
    auto* cmd_phantom = app.add_subcommand("phantom", "rasterize an analytic phantom");
    int ph_size = 512;
    std::string ph_name = "shepp-logan", ph_out;
    cmd_phantom->add_option("--size", ph_size, "image size M")->check(CLI::Range(1, 1 << 14));
    cmd_phantom->add_option("--phantom", ph_name, "shepp-logan|disk|smooth|<file.json>");
    cmd_phantom->add_option("--out", ph_out, "output image path")->required();

    // project
    auto* cmd_project = app.add_subcommand("project", "compute the exact sinogram of a phantom");
    int pr_m = 0, pr_variant = 1;
    std::string pr_name = "shepp-logan", pr_out;
    cmd_project->add_option("--m", pr_m, "order m (2m+1 views)")
        ->required()
        ->check(CLI::Range(1, kDefaultMaxOrder));
    cmd_project->add_option("--variant", pr_variant, "detector node family (1 or 2)")
        ->check(CLI::Range(1, 2));
    cmd_project->add_option("--phantom", pr_name, "shepp-logan|disk|smooth|<file.json>");
    cmd_project->add_option("--out", pr_out, "output sinogram path")->required();

    // reconstruct
    auto* cmd_reconstruct =
        app.add_subcommand("reconstruct", "reconstruct an image from a sinogram");
    std::string rc_sino, rc_method = "fast", rc_out;
    int rc_size = 512;
    std::optional<double> rc_roi;
    cmd_reconstruct->add_option("--sino", rc_sino, "input sinogram")->required();
    cmd_reconstruct->add_option("--method", rc_method, "direct|fast")
        ->check(CLI::IsMember({"direct", "fast"}));
    cmd_reconstruct->add_option("--size", rc_size, "image size M")->check(CLI::Range(16, 1 << 14));
    cmd_reconstruct->add_option("--roi", rc_roi,
                                "mask radius, at most cos(pi/(2m+1)); defaults to that bound");
    cmd_reconstruct->add_option("--out", rc_out, "output image path")->required();

    // compare
    auto* cmd_compare = app.add_subcommand("compare", "error metrics between two images");
    std::string cp_a, cp_b, cp_diff;
    bool cp_roi_only = false;
    cmd_compare->add_option("--a", cp_a, "reference image")->required();
    cmd_compare->add_option("--b", cp_b, "reconstructed image")->required();
    cmd_compare->add_option("--diff", cp_diff, "optional difference image path");
    cmd_compare->add_flag("--roi-only", cp_roi_only, "restrict the sums to the ROI mask");

    // bench
    auto* cmd_bench = app.add_subcommand("bench", "time direct vs fast reconstruction");
    std::vector<int> bn_mlist;
    int bn_size = 256, bn_variant = 1;
    std::string bn_name = "shepp-logan";
    cmd_bench->add_option("--m-list", bn_mlist, "orders to benchmark")->required()->delimiter(',');
    cmd_bench->add_option("--size", bn_size, "image size M")->check(CLI::Range(16, 1 << 14));
    cmd_bench->add_option("--variant", bn_variant, "detector node family")->check(CLI::Range(1, 2));
    cmd_bench->add_option("--phantom", bn_name, "phantom to project");

    // convergence
    auto* cmd_conv = app.add_subcommand("convergence", "error on the radius-0.8 disk per m");
    std::vector<int> cv_mlist;
    int cv_size = 128;
    std::string cv_name = "smooth", cv_method = "fast";
    cmd_conv->add_option("--m-list", cv_mlist, "orders to sweep")->required()->delimiter(',');
    cmd_conv->add_option("--size", cv_size, "image size M")->check(CLI::Range(16, 1 << 14));
    cmd_conv->add_option("--phantom", cv_name, "phantom (needs an exact sinogram)");
    cmd_conv->add_option("--method", cv_method, "direct|fast")
        ->check(CLI::IsMember({"direct", "fast"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }

    if (threads > 0) {
#ifdef _OPENMP
        omp_set_num_threads(threads);
#endif
    }

    if (*cmd_phantom) {
        PhantomSpec p = load_phantom(ph_name);
        ImageGrid img = rasterize_phantom(p, ph_size);
        require_finite(img);
        write_image_outputs(ph_out, img);
        std::cerr << "phantom '" << ph_name << "' rasterized at " << ph_size << "x" << ph_size
                  << " -> " << ph_out << " (+.pgm)\n";
        return 0;
    }

    if (*cmd_project) {
        PhantomSpec p = load_phantom(pr_name);
        ScanGeometry g = build_geometry(pr_m, pr_variant == 1 ? Variant::TypeI : Variant::TypeII);
        Sinogram s = project_phantom(p, g);
        require_finite(s);
        double max_g = 0.0;
        for (double v : s.data) max_g = std::max(max_g, std::abs(v));
        std::cerr << "sinogram " << g.n_views() << " views x " << g.n_detectors()
                  << " detectors, max |g| = " << max_g;
        if (const auto* ep = std::get_if<EllipsePhantom>(&p)) {
            double rho_sum = 0.0;
            for (const Ellipse& e : ep->ellipses()) rho_sum += std::abs(e.rho);
            std::cerr << " (chord bound " << 2.0 * rho_sum << ")";
            if (max_g > 2.0 * rho_sum + 1e-9) {
                throw NumericFailure("sinogram exceeds the chord bound");
            }
        }
        std::cerr << " -> " << pr_out << "\n";
        write_sinogram(pr_out, s);
        return 0;
    }

    if (*cmd_reconstruct) {
        Sinogram s = read_sinogram(rc_sino);
        ReconstructionConfig cfg;
        cfg.roi = rc_roi;
        auto t0 = clock_type::now();
        ImageGrid img;
        double backprojection_seconds = 0.0;
        if (rc_method == "direct") {
            CoeffMatrix coeffs = compute_coeffs(s);
            auto t1 = clock_type::now();
            img = synthesize_direct(coeffs, rc_size, cfg);
            backprojection_seconds = seconds_since(t1);
        } else {
            AlphaTable alpha = compute_alpha(compute_coeffs(s));
            auto t1 = clock_type::now();
            img = synthesize_fast(alpha, rc_size, cfg);
            backprojection_seconds = seconds_since(t1);
        }
        double total_seconds = seconds_since(t0);
        require_finite(img);
        write_image_outputs(rc_out, img);
        json timing = {{"seconds_total", total_seconds},
                       {"seconds_backprojection", backprojection_seconds}};
        std::cout << timing.dump(2) << "\n";
        std::cerr << rc_method << " reconstruction m=" << s.geometry.m << " size=" << rc_size
                  << " in " << total_seconds << " s -> " << rc_out << "\n";
        return 0;
    }

    if (*cmd_compare) {
        ImageGrid a = read_image(cp_a);
        ImageGrid b = read_image(cp_b);
        ErrorReport rep = compare(a, b, cp_roi_only);
        if (!cp_diff.empty()) {
            write_image_outputs(cp_diff, diff_image(a, b));
        }
        std::cout << rep.to_json() << "\n";
        return 0;
    }

    if (*cmd_bench) {
        PhantomSpec p = load_phantom(bn_name);
        Variant variant = bn_variant == 1 ? Variant::TypeI : Variant::TypeII;
        json runs = json::array();
        std::vector<double> log_n, log_td, log_tf;
        for (int m : bn_mlist) {
            ScanGeometry g = build_geometry(m, variant);
            Sinogram s = project_phantom(p, g);
            auto t0 = clock_type::now();
            ImageGrid direct = oped_direct(s, bn_size);
            double t_direct = seconds_since(t0);
            auto t1 = clock_type::now();
            ImageGrid fast = oped_fast(s, bn_size);
            double t_fast = seconds_since(t1);
            require_finite(direct);
            require_finite(fast);
            runs.push_back({{"m", m},
                            {"t_direct", t_direct},
                            {"t_fast", t_fast},
                            {"speedup", t_direct / t_fast}});
            log_n.push_back(std::log(2.0 * m + 1.0));
            log_td.push_back(std::log(std::max(t_direct, 1e-9)));
            log_tf.push_back(std::log(std::max(t_fast, 1e-9)));
            std::cerr << "m=" << m << ": direct " << t_direct << " s, fast " << t_fast
                      << " s, speedup " << t_direct / t_fast << "\n";
        }
        json out = {{"size", bn_size}, {"runs", runs}};
        if (bn_mlist.size() >= 2) {
            // least-squares slope of log t against log N, the scaling exponent
            auto slope = [&](const std::vector<double>& ly) {
                double sx = 0, sy = 0, sxx = 0, sxy = 0;
                const double n = static_cast<double>(log_n.size());
                for (size_t i = 0; i < log_n.size(); ++i) {
                    sx += log_n[i];
                    sy += ly[i];
                    sxx += log_n[i] * log_n[i];
                    sxy += log_n[i] * ly[i];
                }
                return (n * sxy - sx * sy) / (n * sxx - sx * sx);
            };
            out["slope_direct"] = slope(log_td);
            out["slope_fast"] = slope(log_tf);
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (*cmd_conv) {
        PhantomSpec p = load_phantom(cv_name);
        ImageGrid truth = rasterize_phantom(p, cv_size);
        json rows = json::array();
        for (int m : cv_mlist) {
            ScanGeometry g = build_geometry(m, Variant::TypeI);
            Sinogram s = project_phantom(p, g);
            ReconstructionConfig cfg;
            cfg.method = cv_method == "direct" ? Method::Direct : Method::Fast;
            ImageGrid img = reconstruct(s, cv_size, cfg);
            require_finite(img);
            double worst = 0.0;
            for (int r = 0; r < cv_size; ++r) {
                for (int c = 0; c < cv_size; ++c) {
                    double x = ImageGrid::pixel_x(cv_size, c);
                    double y = ImageGrid::pixel_y(cv_size, r);
                    if (x * x + y * y > 0.64) continue;
                    worst = std::max(worst, std::abs(img.at(r, c) - truth.at(r, c)));
                }
            }
            rows.push_back({{"m", m}, {"max_abs_err", worst}});
            std::cerr << "m=" << m << ": max |err| on r<=0.8 is " << worst << "\n";
        }
        std::cout << json{{"phantom", cv_name},
                          {"method", cv_method},
                          {"size", cv_size},
                          {"errors", rows}}
                         .dump(2)
                  << "\n";
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const NumericFailure& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
