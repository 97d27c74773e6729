#include "oped/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace oped {

namespace {

constexpr double kPi = std::numbers::pi;

// Order m recovered from the input length, or -1 when the length is not
// admissible for the kind.
int order_from_length(SineTransformKind kind, int len) {
    switch (kind) {
        case SineTransformKind::HalfNodeI:
        case SineTransformKind::IntegerNodeI:
        case SineTransformKind::HalfNodeII:
            // N = 2m+1 samples
            return (len >= 3 && len % 2 == 1) ? (len - 1) / 2 : -1;
        case SineTransformKind::IntegerNodeII:
            // 2m samples at j = 1..2m
            return (len >= 2 && len % 2 == 0) ? len / 2 : -1;
    }
    return -1;
}

[[noreturn]] void throw_length(SineTransformKind kind, int len) {
    throw std::invalid_argument("sine transform: input length " + std::to_string(len) +
                                " does not match kind " +
                                std::to_string(static_cast<int>(kind)) + " for any m >= 1");
}

// FFTW plans are not thread safe to create, only to execute. A small table
// of plans per (r2r kind, length) is built lazily under a lock; plans are
// created with FFTW_UNALIGNED so they can execute on any caller buffer.
class PlanTable {
  public:
    fftw_plan get(fftw_r2r_kind kind, int n) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(static_cast<int>(kind), n);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<double> in(n), out(n);
        fftw_plan p = fftw_plan_r2r_1d(n, in.data(), out.data(), kind,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (p == nullptr) {
            throw std::runtime_error("fftw_plan_r2r_1d failed for n = " + std::to_string(n));
        }
        plans_.emplace(key, p);
        return p;
    }

  private:
    std::mutex mutex_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanTable& plan_table() {
    static PlanTable table;
    return table;
}

std::vector<double> run_r2r(fftw_r2r_kind kind, std::vector<double> in) {
    const int n = static_cast<int>(in.size());
    fftw_plan p = plan_table().get(kind, n);
    std::vector<double> out(n);
    fftw_execute_r2r(p, in.data(), out.data());
    return out;
}

}  // namespace

int sine_input_length(SineTransformKind kind, int m) {
    if (m < 1) throw std::invalid_argument("sine_input_length: m must be >= 1");
    return kind == SineTransformKind::IntegerNodeII ? 2 * m : 2 * m + 1;
}

int sine_output_length(SineTransformKind kind, int input_length) {
    const int m = order_from_length(kind, input_length);
    if (m < 0) throw_length(kind, input_length);
    switch (kind) {
        case SineTransformKind::HalfNodeI:
        case SineTransformKind::HalfNodeII:
            return 2 * m + 1;
        case SineTransformKind::IntegerNodeI:
            return 2 * m;
        case SineTransformKind::IntegerNodeII:
            return 2 * m + 1;
    }
    return -1;
}

std::vector<double> sine_transform_naive(SineTransformKind kind, std::span<const double> input) {
    const int len = static_cast<int>(input.size());
    const int m = order_from_length(kind, len);
    if (m < 0) throw_length(kind, len);
    const int n = 2 * m + 1;
    const int out_len = sine_output_length(kind, len);
    std::vector<double> out(out_len, 0.0);

    // Angles are formed from the exact integer products so the naive sums
    // and the FFT path agree to rounding even for large m.
    switch (kind) {
        case SineTransformKind::HalfNodeI: {
            const double h = kPi / (2 * n);
            for (int k = 0; k < out_len; ++k) {
                double acc = 0.0;
                for (int j = 0; j < len; ++j) {
                    acc += input[j] * std::sin(h * static_cast<double>(
                                                       std::int64_t(k + 1) * (2 * j + 1)));
                }
                out[k] = acc;
            }
            break;
        }
        case SineTransformKind::IntegerNodeI: {
            const double h = kPi / n;
            for (int l = 0; l < out_len; ++l) {
                double acc = 0.0;
                for (int k = 0; k < len; ++k) {
                    acc += input[k] * std::sin(h * static_cast<double>(
                                                       std::int64_t(k + 1) * (l + 1)));
                }
                out[l] = acc;
            }
            break;
        }
        case SineTransformKind::IntegerNodeII: {
            const double h = kPi / n;
            for (int k = 0; k < out_len; ++k) {
                double acc = 0.0;
                for (int j = 1; j <= len; ++j) {
                    acc += input[j - 1] * std::sin(h * static_cast<double>(
                                                           std::int64_t(k + 1) * j));
                }
                out[k] = acc;
            }
            break;
        }
        case SineTransformKind::HalfNodeII: {
            const double h = kPi / (2 * n);
            for (int l = 0; l < out_len; ++l) {
                double acc = 0.0;
                for (int k = 0; k < len; ++k) {
                    acc += input[k] * std::sin(h * static_cast<double>(
                                                       std::int64_t(k + 1) * (2 * l + 1)));
                }
                out[l] = acc;
            }
            break;
        }
    }
    return out;
}

std::vector<double> sine_transform_fast(SineTransformKind kind, std::span<const double> input) {
    const int len = static_cast<int>(input.size());
    const int m = order_from_length(kind, len);
    if (m < 0) throw_length(kind, len);
    const int n = 2 * m + 1;

    switch (kind) {
        case SineTransformKind::HalfNodeI: {
            // DST-II of length N; FFTW's RODFT10 computes twice the sum.
            std::vector<double> out = run_r2r(FFTW_RODFT10, {input.begin(), input.end()});
            for (double& v : out) v *= 0.5;
            return out;
        }
        case SineTransformKind::IntegerNodeI: {
            // The k = 2m coefficient multiplies sin((l+1)pi) = 0 at every
            // node, so the sum collapses to a DST-I of length N-1.
            std::vector<double> out = run_r2r(FFTW_RODFT00, {input.begin(), input.end() - 1});
            for (double& v : out) v *= 0.5;
            return out;
        }
        case SineTransformKind::IntegerNodeII: {
            // DST-I of length N-1; the k = 2m output is identically zero.
            std::vector<double> out = run_r2r(FFTW_RODFT00, {input.begin(), input.end()});
            out.resize(n);
            for (int k = 0; k < n - 1; ++k) out[k] *= 0.5;
            out[n - 1] = 0.0;
            return out;
        }
        case SineTransformKind::HalfNodeII: {
            // DST-III of length N. RODFT01 weighs the last input by
            // (-1)^l instead of 2 sin(N (l+1/2) pi / N) = 2 (-1)^l, so
            // doubling it first makes the halved output the plain sum.
            std::vector<double> in(input.begin(), input.end());
            in[n - 1] *= 2.0;
            std::vector<double> out = run_r2r(FFTW_RODFT01, std::move(in));
            for (double& v : out) v *= 0.5;
            return out;
        }
    }
    throw_length(kind, len);
}

}  // namespace oped
