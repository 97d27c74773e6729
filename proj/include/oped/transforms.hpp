#pragma once

#include <span>
#include <vector>

namespace oped {

/// The four discrete sine sums the reconstruction needs, one per
/// (pipeline step, variant) pair. Each kind fixes the node formula and the
/// admissible input length; with N = 2m+1 the defining sums are
///
///   HalfNodeI:     y_k = sum_{j=0}^{N-1} x_j sin((k+1)(j+1/2)pi/N),  k = 0..N-1
///   IntegerNodeI:  y_l = sum_{k=0}^{N-1} x_k sin((k+1)(l+1)pi/N),    l = 0..N-2
///   IntegerNodeII: y_k = sum_{j=1}^{N-1} x_{j-1} sin((k+1) j pi/N),  k = 0..N-1
///   HalfNodeII:    y_l = sum_{k=0}^{N-1} x_k sin((k+1)(l+1/2)pi/N),  l = 0..N-1
///
/// HalfNodeI/IntegerNodeI serve TypeI (analysis at detector angles,
/// synthesis at interpolation nodes); the other two serve TypeII with the
/// node families swapped. No hidden normalization: outputs are the raw sums.
enum class SineTransformKind { HalfNodeI, IntegerNodeI, IntegerNodeII, HalfNodeII };

/// Input length expected for the kind, given m >= 1.
int sine_input_length(SineTransformKind kind, int m);

/// Output length produced for a valid input length. Throws
/// std::invalid_argument when the length matches no m >= 1.
int sine_output_length(SineTransformKind kind, int input_length);

/// Defining sum by direct double loop; the correctness oracle for the fast
/// path. O(N^2).
std::vector<double> sine_transform_naive(SineTransformKind kind, std::span<const double> input);

/// Same sums evaluated through FFT-based discrete sine transforms in
/// O(N log N); works for every admissible length, odd ones included.
/// Agrees with the naive path to better than 1e-10 times the input L1 norm.
/// Stateless from the caller's view; the internal plan table is shared and
/// concurrent calls do not interfere.
std::vector<double> sine_transform_fast(SineTransformKind kind, std::span<const double> input);

}  // namespace oped
