#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "specpred/types.hpp"

namespace specpred {

enum class Taper { hann, none };

struct SpectralConfig {
	Taper taper = Taper::hann;
	// Relative total-power threshold below which the spectrum is declared
	// degenerate (effectively zero residual power after mean removal).
	double power_floor = 1e-12;
};

struct SpectralReport {
	std::string series;
	std::size_t t_used = 0;              // samples that entered the transform
	std::size_t k = 0;                   // one-sided bins, DC excluded
	std::vector<double> psd;             // P_1..P_K
	std::vector<double> p;               // normalized spectrum, sums to 1
	double entropy = 0.0;                // H, nats
	double entropy_max = 0.0;            // ln K, nats
	double omega = 0.0;                  // 1 - H/H_max, clamped to [0,1]
	std::vector<std::size_t> peak_bins;  // top-3 bins by power (1-based), ties -> lower bin
	bool degenerate = false;             // always false on a returned report
};

/// Mean removal, taper, transform; fills psd/peak fields only.
/// Throws SeriesTooShort (T < 4) and DegenerateSpectrum (no residual power).
SpectralReport compute_psd(const TimeSeries& s, const SpectralConfig& cfg = {});

/// Fill the entropy fields of a report whose psd is already computed.
SpectralReport spectral_entropy(SpectralReport r);

/// Full report: compute_psd then spectral_entropy.
SpectralReport omega(const TimeSeries& s, const SpectralConfig& cfg = {});

struct DatasetOmega {
	std::vector<SpectralReport> reports;                    // successful series, input order
	std::vector<std::pair<std::string, std::string>> skipped; // (series name, reason)
	double mean_omega = 0.0;                                // arithmetic mean over reports
};

/// Per-covariate omega with failing series skipped. Throws
/// AllSeriesDegenerate when every series fails on a degenerate spectrum,
/// AllSeriesFailed when nothing survives for mixed reasons.
DatasetOmega omega_dataset(const Dataset& d, const SpectralConfig& cfg = {});

/// Symmetric Hann window, w_t = 0.5*(1 - cos(2*pi*t/(n-1))).
std::vector<double> hann_window(std::size_t n);

} // namespace specpred
