#include "specpred/synthgen.hpp"

#include <cmath>
#include <complex>
#include <cstdio>

#include "fft.hpp"
#include "specpred/errors.hpp"
#include "specpred/rng.hpp"
#include "specpred/spectral.hpp"

namespace specpred {

namespace {

std::vector<std::size_t> harmonic_bins(std::size_t k, std::size_t n_harmonics) {
	const std::size_t base = k / 8;
	std::vector<std::size_t> bins;
	for (std::size_t h = 1; h <= n_harmonics; ++h) {
		std::size_t b = base * h;
		if (b < 1 || b >= k) // keep off DC and the Nyquist bin
			throw InvalidInput("n_harmonics " + std::to_string(n_harmonics) +
			                   " does not fit below the Nyquist bin at this length");
		bins.push_back(b);
	}
	return bins;
}

std::vector<double> mixture_shape(std::size_t k, const std::vector<std::size_t>& bins,
                                  double alpha) {
	std::vector<double> shape(k, (1.0 - alpha) / static_cast<double>(k));
	for (std::size_t b : bins)
		shape[b - 1] += alpha / static_cast<double>(bins.size());
	return shape;
}

void validate_spec(const SynthSpec& s) {
	if (!(s.target_omega > 0.0 && s.target_omega < 1.0))
		throw InvalidInput("target omega must lie strictly inside (0,1)");
	if (s.length < 256)
		throw InvalidInput("synthetic length must be >= 256");
	if (!(s.tolerance > 0.0))
		throw InvalidInput("tolerance must be positive");
	if (s.n_harmonics < 1)
		throw InvalidInput("n_harmonics must be >= 1");
	if (s.max_iters < 1)
		throw InvalidInput("max_iters must be >= 1");
}

} // namespace

TimeSeries synth_from_spectrum(const std::vector<double>& shape, std::size_t length,
                               std::uint64_t seed) {
	const std::size_t k = length / 2;
	if (length < 4 || shape.size() != k)
		throw InvalidShape("shape must cover the " + std::to_string(k) +
		                   " non-DC bins of a length-" + std::to_string(length) +
		                   " signal, got " + std::to_string(shape.size()));
	double sum = 0.0;
	for (double v : shape) {
		if (!(v >= 0.0))
			throw InvalidShape("shape entries must be non-negative");
		sum += v;
	}
	if (std::abs(sum - 1.0) > 1e-9)
		throw InvalidShape("shape must sum to 1, got " + std::to_string(sum));

	// Amplitudes sqrt(shape_k), one counter-derived uniform phase per bin.
	std::vector<std::complex<double>> spectrum(k + 1, {0.0, 0.0});
	for (std::size_t bin = 1; bin <= k; ++bin) {
		double amp = std::sqrt(shape[bin - 1]);
		double phase = 2.0 * M_PI * u01(derive_stream(seed, bin));
		spectrum[bin] = std::polar(amp, phase);
	}
	std::vector<double> x = detail::irfft(spectrum, length);

	double mean = 0.0;
	for (double v : x)
		mean += v;
	mean /= static_cast<double>(length);
	double var = 0.0;
	for (double v : x)
		var += (v - mean) * (v - mean);
	var /= static_cast<double>(length);
	if (!(var > 0.0))
		throw InvalidShape("generated signal has zero variance");
	double inv_sd = 1.0 / std::sqrt(var);

	TimeSeries out;
	out.name = "synth";
	out.values.resize(length);
	for (std::size_t t = 0; t < length; ++t)
		out.values[t] = (x[t] - mean) * inv_sd;
	return out;
}

SynthResult generate_with_target_omega(const SynthSpec& spec) {
	validate_spec(spec);
	const std::size_t k = spec.length / 2;
	const auto bins = harmonic_bins(k, spec.n_harmonics);

	// Phases are a function of the seed only, so the measured omega is
	// monotone in alpha and bisection is sound.
	auto measure = [&](double alpha) {
		TimeSeries s = synth_from_spectrum(mixture_shape(k, bins, alpha), spec.length,
		                                   spec.seed);
		double measured = omega(s).omega;
		return std::make_pair(std::move(s), measured);
	};

	double lo = 0.0, hi = 1.0;
	double best_alpha = 0.0, best_err = 2.0, best_omega = 0.0;
	for (std::size_t iter = 1; iter <= spec.max_iters; ++iter) {
		double alpha = 0.5 * (lo + hi);
		auto [series, measured] = measure(alpha);
		double err = std::abs(measured - spec.target_omega);
		if (err < best_err) {
			best_err = err;
			best_alpha = alpha;
			best_omega = measured;
		}
		if (err <= spec.tolerance) {
			SynthResult res;
			res.series = std::move(series);
			res.achieved_omega = measured;
			res.mixing_weight = alpha;
			res.iterations_used = iter;
			return res;
		}
		if (measured < spec.target_omega)
			lo = alpha;
		else
			hi = alpha;
	}
	char msg[160];
	std::snprintf(msg, sizeof msg,
	              "calibration missed target %.4f after %zu iterations (best omega %.4f)",
	              spec.target_omega, spec.max_iters, best_omega);
	throw CalibrationFailed(msg, best_alpha, best_omega);
}

std::vector<SweepItem> generate_sweep(const std::vector<double>& targets,
                                      std::size_t per_level, std::size_t length,
                                      std::uint64_t seed, double tolerance,
                                      std::size_t n_harmonics, std::size_t max_iters) {
	if (targets.empty() || per_level < 1)
		throw InvalidInput("sweep needs at least one target and per_level >= 1");
	std::vector<SweepItem> items;
	items.reserve(targets.size() * per_level);
	for (std::size_t ti = 0; ti < targets.size(); ++ti) {
		for (std::size_t rep = 1; rep <= per_level; ++rep) {
			SweepItem item;
			item.target = targets[ti];
			item.replicate = rep;
			char name[64];
			std::snprintf(name, sizeof name, "omega_%.2f_%zu", targets[ti], rep);
			item.name = name;

			SynthSpec spec;
			spec.target_omega = targets[ti];
			spec.length = length;
			spec.seed = derive_stream(seed, ti * per_level + (rep - 1));
			spec.tolerance = tolerance;
			spec.n_harmonics = n_harmonics;
			spec.max_iters = max_iters;
			try {
				item.result = generate_with_target_omega(spec);
				item.result.series.name = name;
				item.ok = true;
			} catch (const CalibrationFailed& e) {
				item.error = e.what();
				item.best_alpha = e.best_alpha;
				item.best_omega = e.best_omega;
			}
			items.push_back(std::move(item));
		}
	}
	return items;
}

} // namespace specpred
