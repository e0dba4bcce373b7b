#include "specpred/chaos.hpp"

#include <cmath>
#include <limits>

#include "specpred/errors.hpp"

namespace specpred {

namespace {

void validate_config(const LleConfig& c) {
	if (c.m < 2)
		throw InvalidInput("lle: embedding dimension m must be >= 2");
	if (c.tau < 1)
		throw InvalidInput("lle: delay tau must be >= 1");
	if (c.fit_lo < 1 || c.fit_lo >= c.fit_hi || c.fit_hi > c.k_max)
		throw InvalidInput("lle: need 1 <= fit_lo < fit_hi <= k_max");
}

} // namespace

std::vector<std::vector<double>> delay_embed(const TimeSeries& s, std::size_t m,
                                             std::size_t tau) {
	const std::size_t t = s.values.size();
	const std::size_t span = (m - 1) * tau;
	if (t < span + 2)
		throw SeriesTooShort("series '" + s.name + "': need T >= " +
		                     std::to_string(span + 2) + " for m=" + std::to_string(m) +
		                     ", tau=" + std::to_string(tau));
	const std::size_t n = t - span;
	std::vector<std::vector<double>> out(n, std::vector<double>(m));
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t d = 0; d < m; ++d)
			out[i][d] = s.values[i + d * tau];
	return out;
}

LleReport lle_rosenstein(const TimeSeries& s, const LleConfig& cfg) {
	validate_config(cfg);
	validate_series(s);
	require_finite(s);
	const std::size_t theiler = cfg.theiler.value_or(cfg.m * cfg.tau);

	const std::size_t t = s.values.size();
	const std::size_t span = (cfg.m - 1) * cfg.tau;
	if (t < span + 2)
		throw SeriesTooShort("series '" + s.name + "': need T >= " +
		                     std::to_string(span + 2) + " for the embedding");
	const std::size_t n = t - span;

	// Flat row-major embedding; the Euclidean geometry matches delay_embed.
	std::vector<double> emb(n * cfg.m);
	for (std::size_t i = 0; i < n; ++i)
		for (std::size_t d = 0; d < cfg.m; ++d)
			emb[i * cfg.m + d] = s.values[i + d * cfg.tau];

	auto sq_dist = [&](std::size_t a, std::size_t b) {
		double acc = 0.0;
		const double* pa = &emb[a * cfg.m];
		const double* pb = &emb[b * cfg.m];
		for (std::size_t d = 0; d < cfg.m; ++d) {
			double diff = pa[d] - pb[d];
			acc += diff * diff;
		}
		return acc;
	};

	// Exhaustive neighbor search under the Theiler window; ties resolve to
	// the lowest index because only a strictly smaller distance replaces the
	// current best.
	std::vector<std::size_t> neighbor(n);
	std::vector<bool> has_neighbor(n, false);
	std::size_t n_pairs = 0;
	for (std::size_t i = 0; i < n; ++i) {
		double best = std::numeric_limits<double>::infinity();
		std::size_t best_j = 0;
		for (std::size_t j = 0; j < n; ++j) {
			std::size_t sep = i > j ? i - j : j - i;
			if (sep <= theiler)
				continue;
			double d2 = sq_dist(i, j);
			if (d2 < best) {
				best = d2;
				best_j = j;
			}
		}
		if (std::isfinite(best)) {
			neighbor[i] = best_j;
			has_neighbor[i] = true;
			++n_pairs;
		}
	}
	if (n_pairs == 0)
		throw NoValidPairs("series '" + s.name +
		                   "': the Theiler window excludes every neighbor candidate");

	std::size_t full_horizon = 0;
	for (std::size_t i = 0; i < n; ++i)
		if (has_neighbor[i] && std::max(i, neighbor[i]) + cfg.k_max <= n - 1)
			++full_horizon;
	if (full_horizon < 10)
		throw SeriesTooShort("series '" + s.name + "': only " +
		                     std::to_string(full_horizon) +
		                     " neighbor pairs cover the full divergence horizon; need 10");

	const double nan = std::numeric_limits<double>::quiet_NaN();
	LleReport r;
	r.series = s.name;
	r.divergence_curve.assign(cfg.k_max, nan);
	r.n_pairs = n_pairs;
	r.m = cfg.m;
	r.tau = cfg.tau;
	r.k_max = cfg.k_max;
	r.fit_lo = cfg.fit_lo;
	r.fit_hi = cfg.fit_hi;
	r.theiler = theiler;

	// curve[k] = mean ln(distance) at step k over pairs whose both
	// trajectories still exist; zero-distance pairs drop out of that step.
	for (std::size_t k = 1; k <= cfg.k_max; ++k) {
		double sum = 0.0;
		std::size_t count = 0;
		for (std::size_t i = 0; i < n; ++i) {
			if (!has_neighbor[i])
				continue;
			std::size_t j = neighbor[i];
			if (std::max(i, j) + k > n - 1)
				continue;
			double d2 = sq_dist(i + k, j + k);
			if (d2 <= 0.0)
				continue;
			sum += 0.5 * std::log(d2);
			++count;
		}
		if (count > 0)
			r.divergence_curve[k - 1] = sum / static_cast<double>(count);
	}

	// Least squares over the finite curve entries inside the fit window.
	double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
	std::size_t npts = 0;
	for (std::size_t k = cfg.fit_lo; k <= cfg.fit_hi; ++k) {
		double y = r.divergence_curve[k - 1];
		if (!std::isfinite(y))
			continue;
		double x = static_cast<double>(k);
		sx += x;
		sy += y;
		sxx += x * x;
		sxy += x * y;
		syy += y * y;
		++npts;
	}
	if (npts < 2)
		throw NoValidPairs("series '" + s.name +
		                   "': fewer than 2 finite divergence points in the fit window");
	double fn = static_cast<double>(npts);
	double sxx_c = sxx - sx * sx / fn;
	double sxy_c = sxy - sx * sy / fn;
	double syy_c = syy - sy * sy / fn;
	double slope = sxy_c / sxx_c; // fit_lo < fit_hi guarantees sxx_c > 0
	double ss_res = syy_c - slope * sxy_c;
	r.fit_r2 = syy_c > 0.0 ? std::max(0.0, 1.0 - ss_res / syy_c) : 1.0;
	r.low_confidence = r.fit_r2 < 0.5;
	r.lambda_max = slope / s.dt;
	return r;
}

DatasetLle lle_dataset(const Dataset& d, const LleConfig& cfg) {
	validate_dataset(d);
	DatasetLle out;
	for (const auto& s : d.series) {
		try {
			out.reports.push_back(lle_rosenstein(s, cfg));
		} catch (const Error& e) {
			out.skipped.emplace_back(s.name, e.what());
		}
	}
	if (out.reports.empty())
		throw AllSeriesFailed("dataset '" + d.name + "': no series yields an LLE estimate");
	double sum = 0.0;
	for (const auto& r : out.reports)
		sum += r.lambda_max;
	out.mean_lambda = sum / static_cast<double>(out.reports.size());
	return out;
}

} // namespace specpred
