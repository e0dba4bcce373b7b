#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specpred/types.hpp"

namespace specpred {

struct LleConfig {
	std::size_t m = 4;      // embedding dimension
	std::size_t tau = 10;   // delay in steps
	std::size_t k_max = 50; // divergence horizon in steps
	std::size_t fit_lo = 1; // slope-fit range, inclusive
	std::size_t fit_hi = 20;
	std::optional<std::size_t> theiler; // temporal exclusion window; default m*tau
};

struct LleReport {
	std::string series;
	double lambda_max = 0.0; // nats per time unit (per-step slope / dt)
	// Mean log-divergence at steps 1..k_max; NaN marks steps with no
	// contributing pairs.
	std::vector<double> divergence_curve;
	std::size_t n_pairs = 0; // embedded vectors with a valid neighbor
	double fit_r2 = 0.0;
	bool low_confidence = false; // fit_r2 below 0.5: saturated or noisy curve
	std::size_t m = 0;
	std::size_t tau = 0;
	std::size_t k_max = 0;
	std::size_t fit_lo = 0;
	std::size_t fit_hi = 0;
	std::size_t theiler = 0;
};

/// Vector i = (x_i, x_{i+tau}, ..., x_{i+(m-1)tau}); N = T - (m-1)*tau.
std::vector<std::vector<double>> delay_embed(const TimeSeries& s, std::size_t m,
                                             std::size_t tau);

/// Rosenstein-style estimate: exhaustive nearest-neighbor search under a
/// Theiler exclusion window, per-step mean log-distance curve, least-squares
/// slope over [fit_lo, fit_hi].
LleReport lle_rosenstein(const TimeSeries& s, const LleConfig& cfg = {});

struct DatasetLle {
	std::vector<LleReport> reports;
	std::vector<std::pair<std::string, std::string>> skipped; // (series name, reason)
	double mean_lambda = 0.0;
};

/// Per-covariate LLE with failing series skipped; AllSeriesFailed when none
/// survive.
DatasetLle lle_dataset(const Dataset& d, const LleConfig& cfg = {});

} // namespace specpred
