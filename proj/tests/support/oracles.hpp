#pragma once

// Independent reference implementations used only by the tests. Each oracle
// is the most literal translation of the defining formula, with no code
// shared with the library, so a disagreement points at the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "specpred/rng.hpp"

namespace oracle {

// ---------------------------------------------------------------- spectral

// O(T^2) DFT of the de-meaned, optionally Hann-tapered signal; one-sided
// power P_1..P_K with K = floor(T/2), DC dropped, Nyquist kept for even T.
inline std::vector<double> dft_psd(const std::vector<double>& x, bool hann) {
	const std::size_t n = x.size();
	double mean = 0.0;
	for (double v : x)
		mean += v;
	mean /= static_cast<double>(n);
	std::vector<double> y(n);
	for (std::size_t t = 0; t < n; ++t) {
		double w = hann ? 0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(t) /
		                                        static_cast<double>(n - 1)))
		                : 1.0;
		y[t] = (x[t] - mean) * w;
	}
	const std::size_t k_max = n / 2;
	std::vector<double> p;
	p.reserve(k_max);
	for (std::size_t k = 1; k <= k_max; ++k) {
		double re = 0.0, im = 0.0;
		for (std::size_t t = 0; t < n; ++t) {
			double ang = -2.0 * M_PI * static_cast<double>(k) * static_cast<double>(t) /
			             static_cast<double>(n);
			re += y[t] * std::cos(ang);
			im += y[t] * std::sin(ang);
		}
		p.push_back(re * re + im * im);
	}
	return p;
}

struct OmegaRef {
	double entropy = 0.0;
	double entropy_max = 0.0;
	double omega = 0.0;
};

inline OmegaRef omega(const std::vector<double>& x, bool hann = true) {
	auto p = dft_psd(x, hann);
	double total = 0.0;
	for (double v : p)
		total += v;
	OmegaRef r;
	r.entropy_max = std::log(static_cast<double>(p.size()));
	for (double v : p) {
		double q = v / total;
		if (q > 0.0)
			r.entropy -= q * std::log(q);
	}
	r.omega = 1.0 - r.entropy / r.entropy_max;
	if (r.omega < 0.0)
		r.omega = 0.0;
	if (r.omega > 1.0)
		r.omega = 1.0;
	return r;
}

// ---------------------------------------------------------- rank statistics

// Mid-ranks by counting: rank_i = #(v < v_i) + (#(v == v_i) + 1) / 2.
// No sorting involved, unlike the library's implementation.
inline std::vector<double> counting_midranks(const std::vector<double>& v) {
	std::vector<double> r(v.size());
	for (std::size_t i = 0; i < v.size(); ++i) {
		std::size_t less = 0, equal = 0;
		for (std::size_t j = 0; j < v.size(); ++j) {
			if (v[j] < v[i])
				++less;
			else if (v[j] == v[i])
				++equal;
		}
		r[i] = static_cast<double>(less) + (static_cast<double>(equal) + 1.0) / 2.0;
	}
	return r;
}

// Two-pass Pearson: means first, then one accumulation of the three sums.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
	const std::size_t n = x.size();
	double mx = 0.0, my = 0.0;
	for (std::size_t i = 0; i < n; ++i) {
		mx += x[i];
		my += y[i];
	}
	mx /= static_cast<double>(n);
	my /= static_cast<double>(n);
	double sxy = 0.0, sxx = 0.0, syy = 0.0;
	for (std::size_t i = 0; i < n; ++i) {
		double dx = x[i] - mx, dy = y[i] - my;
		sxy += dx * dy;
		sxx += dx * dx;
		syy += dy * dy;
	}
	return sxy / std::sqrt(sxx * syy);
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
	return pearson(counting_midranks(x), counting_midranks(y));
}

// Median of all pairwise slopes, enumerated directly.
inline double theil_sen(const std::vector<double>& x, const std::vector<double>& y) {
	std::vector<double> slopes;
	for (std::size_t i = 0; i < x.size(); ++i)
		for (std::size_t j = i + 1; j < x.size(); ++j)
			if (x[i] != x[j])
				slopes.push_back((y[j] - y[i]) / (x[j] - x[i]));
	std::sort(slopes.begin(), slopes.end());
	const std::size_t m = slopes.size();
	if (m % 2 == 1)
		return slopes[m / 2];
	return 0.5 * (slopes[m / 2 - 1] + slopes[m / 2]);
}

// ---------------------------------------------------------------- signals

inline std::vector<double> sine(std::size_t n, double period, double amp = 1.0,
                                double phase = 0.0) {
	std::vector<double> v(n);
	for (std::size_t t = 0; t < n; ++t)
		v[t] = amp * std::sin(2.0 * M_PI * static_cast<double>(t) / period + phase);
	return v;
}

// Box-Muller on the library's deterministic u01 stream; identical values on
// every platform and run.
inline std::vector<double> gaussian(std::size_t n, std::uint64_t seed, double sigma = 1.0) {
	std::vector<double> v(n);
	for (std::size_t i = 0; i < n; i += 2) {
		double u1 = specpred::u01(specpred::derive_stream(seed, 2 * i));
		double u2 = specpred::u01(specpred::derive_stream(seed, 2 * i + 1));
		if (u1 <= 0.0)
			u1 = 0x1.0p-53;
		double r = std::sqrt(-2.0 * std::log(u1));
		v[i] = sigma * r * std::cos(2.0 * M_PI * u2);
		if (i + 1 < n)
			v[i + 1] = sigma * r * std::sin(2.0 * M_PI * u2);
	}
	return v;
}

inline std::vector<double> uniform(std::size_t n, std::uint64_t seed, double lo = 0.0,
                                   double hi = 1.0) {
	std::vector<double> v(n);
	for (std::size_t i = 0; i < n; ++i)
		v[i] = lo + (hi - lo) * specpred::u01(specpred::derive_stream(seed, i));
	return v;
}

inline std::vector<double> logistic_map(std::size_t n, double x0 = 0.2, double r = 4.0) {
	std::vector<double> v(n);
	double x = x0;
	for (std::size_t t = 0; t < n; ++t) {
		v[t] = x;
		x = r * x * (1.0 - x);
	}
	return v;
}

// Sine plus gaussian noise; the workhorse "random but structured" input.
inline std::vector<double> noisy_sine(std::size_t n, double period, double noise_sigma,
                                      std::uint64_t seed) {
	auto v = sine(n, period);
	auto g = gaussian(n, seed, noise_sigma);
	for (std::size_t i = 0; i < n; ++i)
		v[i] += g[i];
	return v;
}

} // namespace oracle
