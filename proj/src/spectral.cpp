#include "specpred/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fft.hpp"
#include "specpred/errors.hpp"

namespace specpred {

std::vector<double> hann_window(std::size_t n) {
	std::vector<double> w(n, 1.0);
	if (n < 2)
		return w;
	const double denom = static_cast<double>(n - 1);
	for (std::size_t t = 0; t < n; ++t)
		w[t] = 0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(t) / denom));
	return w;
}

SpectralReport compute_psd(const TimeSeries& s, const SpectralConfig& cfg) {
	validate_series(s);
	require_finite(s);
	const std::size_t t = s.values.size();
	// K = floor(T/2) must be >= 2 so that H_max = ln K is positive.
	if (t < 4)
		throw SeriesTooShort("series '" + s.name + "': need at least 4 samples, got " +
		                     std::to_string(t));

	// Mean removal first, then the taper: keeps shift invariance exact.
	double mean = std::accumulate(s.values.begin(), s.values.end(), 0.0) /
	              static_cast<double>(t);
	std::vector<double> x(t);
	for (std::size_t i = 0; i < t; ++i)
		x[i] = s.values[i] - mean;
	if (cfg.taper == Taper::hann) {
		auto w = hann_window(t);
		for (std::size_t i = 0; i < t; ++i)
			x[i] *= w[i];
	}

	double mean_square = 0.0;
	for (double v : x)
		mean_square += v * v;
	mean_square /= static_cast<double>(t);

	auto spectrum = detail::rfft(x);
	const std::size_t k = t / 2; // bins 1..K; DC excluded, Nyquist included for even T

	SpectralReport r;
	r.series = s.name;
	r.t_used = t;
	r.k = k;
	r.psd.resize(k);
	double total = 0.0;
	for (std::size_t i = 1; i <= k; ++i) {
		double power = std::norm(spectrum[i]);
		r.psd[i - 1] = power;
		total += power;
	}

	// <= so that exactly-zero residual power (constant input) triggers; the
	// threshold scales with the signal's own power, keeping the check
	// affine-invariant.
	if (total <= cfg.power_floor * static_cast<double>(t) * mean_square)
		throw DegenerateSpectrum("series '" + s.name + "': no residual spectral power");

	// Top-3 power bins, 1-based; ties resolved toward the lower bin.
	std::vector<std::size_t> idx(k);
	std::iota(idx.begin(), idx.end(), std::size_t{0});
	std::stable_sort(idx.begin(), idx.end(), [&r](std::size_t a, std::size_t b) {
		return r.psd[a] > r.psd[b];
	});
	for (std::size_t i = 0; i < std::min<std::size_t>(3, k); ++i)
		r.peak_bins.push_back(idx[i] + 1);
	return r;
}

SpectralReport spectral_entropy(SpectralReport r) {
	if (r.psd.empty() || r.k == 0)
		throw InvalidInput("spectral_entropy: psd not computed");
	double total = std::accumulate(r.psd.begin(), r.psd.end(), 0.0);
	r.p.resize(r.k);
	double h = 0.0;
	for (std::size_t i = 0; i < r.k; ++i) {
		double pk = r.psd[i] / total;
		r.p[i] = pk;
		if (pk > 0.0)
			h -= pk * std::log(pk); // 0*log 0 == 0 by convention
	}
	r.entropy = std::max(0.0, h);
	r.entropy_max = std::log(static_cast<double>(r.k));
	r.omega = std::clamp(1.0 - r.entropy / r.entropy_max, 0.0, 1.0);
	return r;
}

SpectralReport omega(const TimeSeries& s, const SpectralConfig& cfg) {
	return spectral_entropy(compute_psd(s, cfg));
}

DatasetOmega omega_dataset(const Dataset& d, const SpectralConfig& cfg) {
	validate_dataset(d);
	DatasetOmega out;
	std::size_t degenerate_count = 0;
	for (const auto& s : d.series) {
		try {
			out.reports.push_back(omega(s, cfg));
		} catch (const DegenerateSpectrum& e) {
			++degenerate_count;
			out.skipped.emplace_back(s.name, e.what());
		} catch (const Error& e) {
			out.skipped.emplace_back(s.name, e.what());
		}
	}
	if (out.reports.empty()) {
		std::string detail;
		for (const auto& [name, reason] : out.skipped) {
			(void)name;
			detail += "; " + reason;
		}
		if (degenerate_count == d.series.size())
			throw AllSeriesDegenerate("dataset '" + d.name +
			                          "': every series has a degenerate spectrum" + detail);
		throw AllSeriesFailed("dataset '" + d.name + "': no series yields a spectral report" +
		                      detail);
	}
	double sum = 0.0;
	for (const auto& r : out.reports)
		sum += r.omega;
	out.mean_omega = sum / static_cast<double>(out.reports.size());
	return out;
}

} // namespace specpred
