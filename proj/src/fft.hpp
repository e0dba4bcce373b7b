#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace specpred::detail {

// Forward real-to-complex transform. Returns bins 0..floor(n/2) with the
// unnormalized DFT convention X_k = sum_t x_t e^{-2pi i k t / n}.
std::vector<std::complex<double>> rfft(const std::vector<double>& x);

// Inverse complex-to-real transform of a half spectrum (bins 0..floor(n/2)).
// Output is unnormalized (scaled by n relative to the analytic inverse).
// Imaginary parts of the DC and Nyquist bins are ignored.
std::vector<double> irfft(const std::vector<std::complex<double>>& half_spectrum, std::size_t n);

} // namespace specpred::detail
