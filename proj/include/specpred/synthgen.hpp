#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "specpred/types.hpp"

namespace specpred {

struct SynthSpec {
	double target_omega = 0.5;    // open interval (0,1)
	std::size_t length = 4096;    // >= 256
	std::uint64_t seed = 0;
	double tolerance = 0.02;
	// Peaked spectral mass is spread over this many harmonics at bins
	// floor(K/8)*{1..n}. One harmonic keeps the achievable omega ceiling
	// high enough to calibrate targets up to 0.8 at length 4096.
	std::size_t n_harmonics = 1;
	std::size_t max_iters = 60;
};

struct SynthResult {
	TimeSeries series;
	double achieved_omega = 0.0;
	double mixing_weight = 0.0; // the calibrated alpha
	std::size_t iterations_used = 0;
};

/// Inverse transform of amplitudes sqrt(shape_k) with seeded uniform random
/// phases; standardized to zero mean, unit (population) variance. shape is a
/// probability vector over the K = floor(length/2) non-DC bins.
TimeSeries synth_from_spectrum(const std::vector<double>& shape, std::size_t length,
                               std::uint64_t seed);

/// Bisection on the mixing weight alpha between a peaked spectrum and a
/// uniform floor, driven by the MEASURED omega of the generated signal (the
/// same Hann pipeline used for analysis). Throws CalibrationFailed with the
/// best alpha found when max_iters runs out outside tolerance.
SynthResult generate_with_target_omega(const SynthSpec& spec);

struct SweepItem {
	std::string name;          // omega_<target>_<replicate>
	double target = 0.0;
	std::size_t replicate = 0; // 1-based
	bool ok = false;
	SynthResult result;        // valid when ok
	std::string error;         // set when !ok
	double best_alpha = 0.0;   // closest calibration state when !ok
	double best_omega = 0.0;
};

/// per_level series per target, seeds derived per item from (seed, index);
/// calibration failures are collected per item, never fatal. Series are named
/// omega_<target>_<replicate>.
std::vector<SweepItem> generate_sweep(const std::vector<double>& targets,
                                      std::size_t per_level, std::size_t length,
                                      std::uint64_t seed, double tolerance = 0.02,
                                      std::size_t n_harmonics = 1,
                                      std::size_t max_iters = 60);

} // namespace specpred
