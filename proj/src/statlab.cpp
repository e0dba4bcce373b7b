#include "specpred/statlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "specpred/errors.hpp"
#include "specpred/rng.hpp"

namespace specpred {

namespace {

void require_finite_sample(const XYSample& s) {
	for (const auto& p : s)
		if (!std::isfinite(p.x) || !std::isfinite(p.y))
			throw InvalidInput("sample contains non-finite points");
}

// Canonical single-pass-after-means Pearson core shared by pearson and
// spearman (on ranks).
double pearson_core(const std::vector<double>& x, const std::vector<double>& y) {
	const std::size_t n = x.size();
	double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
	double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
	double sxy = 0.0, sxx = 0.0, syy = 0.0;
	for (std::size_t i = 0; i < n; ++i) {
		double dx = x[i] - mx;
		double dy = y[i] - my;
		sxy += dx * dy;
		sxx += dx * dx;
		syy += dy * dy;
	}
	if (sxx == 0.0)
		throw DegenerateVariance("x values have zero variance");
	if (syy == 0.0)
		throw DegenerateVariance("y values have zero variance");
	return sxy / std::sqrt(sxx * syy);
}

// Mid-ranks: ties share the average of the ranks they span.
std::vector<double> mid_ranks(const std::vector<double>& v) {
	const std::size_t n = v.size();
	std::vector<std::size_t> order(n);
	std::iota(order.begin(), order.end(), std::size_t{0});
	std::sort(order.begin(), order.end(),
	          [&v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
	std::vector<double> ranks(n);
	std::size_t i = 0;
	while (i < n) {
		std::size_t j = i;
		while (j + 1 < n && v[order[j + 1]] == v[order[i]])
			++j;
		// positions i..j (0-based) share the rank (i+1 + j+1)/2
		double r = 0.5 * static_cast<double>(i + j + 2);
		for (std::size_t t = i; t <= j; ++t)
			ranks[order[t]] = r;
		i = j + 1;
	}
	return ranks;
}

} // namespace

std::pair<double, double> fisher_ci(double r, std::size_t n, double confidence) {
	if (n < 4)
		throw TooFewPoints("Fisher CI needs n >= 4, got " + std::to_string(n));
	if (!(confidence > 0.0 && confidence < 1.0))
		throw InvalidInput("confidence must lie inside (0,1)");
	if (!(r > -1.0 && r < 1.0))
		throw DegenerateVariance("Fisher z is unbounded at |r| = 1");
	boost::math::normal_distribution<double> norm;
	double z_crit = boost::math::quantile(norm, 0.5 + confidence / 2.0);
	double z = std::atanh(r);
	double half = z_crit / std::sqrt(static_cast<double>(n - 3));
	return {std::tanh(z - half), std::tanh(z + half)};
}

CorrelationSummary pearson_with_fisher_ci(const XYSample& s, double confidence) {
	if (s.size() < 4)
		throw TooFewPoints("Pearson with Fisher CI needs n >= 4, got " +
		                   std::to_string(s.size()));
	require_finite_sample(s);
	std::vector<double> x(s.size()), y(s.size());
	for (std::size_t i = 0; i < s.size(); ++i) {
		x[i] = s[i].x;
		y[i] = s[i].y;
	}
	CorrelationSummary out;
	out.n = s.size();
	out.pearson_r = pearson_core(x, y);
	auto [lo, hi] = fisher_ci(out.pearson_r, out.n, confidence);
	out.ci_low = lo;
	out.ci_high = hi;
	return out;
}

double spearman(const XYSample& s) {
	if (s.size() < 2)
		throw TooFewPoints("Spearman needs n >= 2, got " + std::to_string(s.size()));
	require_finite_sample(s);
	std::vector<double> x(s.size()), y(s.size());
	for (std::size_t i = 0; i < s.size(); ++i) {
		x[i] = s[i].x;
		y[i] = s[i].y;
	}
	return pearson_core(mid_ranks(x), mid_ranks(y));
}

double spearman_pvalue(double rho, std::size_t n) {
	if (n < 3)
		throw TooFewPoints("Spearman p-value needs n >= 3");
	if (!(rho >= -1.0 && rho <= 1.0))
		throw InvalidInput("rho outside [-1,1]");
	if (std::abs(rho) >= 1.0)
		return 0.0;
	double df = static_cast<double>(n - 2);
	double t = rho * std::sqrt(df / (1.0 - rho * rho));
	boost::math::students_t_distribution<double> dist(df);
	return 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
}

CorrelationSummary correlation_summary(const XYSample& s, double confidence) {
	CorrelationSummary out = pearson_with_fisher_ci(s, confidence);
	out.spearman_rho = spearman(s);
	out.spearman_p = spearman_pvalue(out.spearman_rho, out.n);
	return out;
}

double theil_sen_slope(const XYSample& s) {
	if (s.size() < 2)
		throw TooFewPoints("Theil-Sen needs n >= 2, got " + std::to_string(s.size()));
	require_finite_sample(s);
	std::vector<double> slopes;
	slopes.reserve(s.size() * (s.size() - 1) / 2);
	for (std::size_t i = 0; i < s.size(); ++i)
		for (std::size_t j = i + 1; j < s.size(); ++j)
			if (s[j].x != s[i].x)
				slopes.push_back((s[j].y - s[i].y) / (s[j].x - s[i].x));
	if (slopes.empty())
		throw AllXEqual("Theil-Sen: every pair of points shares the same x");
	std::sort(slopes.begin(), slopes.end());
	std::size_t m = slopes.size();
	if (m % 2 == 1)
		return slopes[m / 2];
	return 0.5 * (slopes[m / 2 - 1] + slopes[m / 2]);
}

double interpolated_quantile(const std::vector<double>& sorted, double p) {
	if (sorted.empty())
		throw TooFewPoints("quantile of an empty vector");
	if (!(p >= 0.0 && p <= 1.0))
		throw InvalidInput("quantile position outside [0,1]");
	if (sorted.size() == 1)
		return sorted[0];
	double h = static_cast<double>(sorted.size() - 1) * p;
	std::size_t lo = static_cast<std::size_t>(h);
	if (lo >= sorted.size() - 1)
		return sorted.back();
	double frac = h - static_cast<double>(lo);
	return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

BinSummary quantile_bins(const XYSample& s, std::size_t k) {
	if (k < 1)
		throw InvalidInput("quantile_bins needs k >= 1");
	if (s.size() < k)
		throw TooFewPoints("quantile_bins needs n >= k, got n=" +
		                   std::to_string(s.size()) + ", k=" + std::to_string(k));
	require_finite_sample(s);

	std::vector<double> xs(s.size());
	for (std::size_t i = 0; i < s.size(); ++i)
		xs[i] = s[i].x;
	std::sort(xs.begin(), xs.end());

	BinSummary out;
	out.edges.resize(k + 1);
	for (std::size_t i = 0; i <= k; ++i)
		out.edges[i] = interpolated_quantile(xs, static_cast<double>(i) / static_cast<double>(k));

	// Highest bin whose lower edge the point meets; the top edge is only a
	// descriptive bound.
	std::vector<std::vector<double>> bx(k), by(k);
	for (const auto& p : s) {
		std::size_t bin = 0;
		for (std::size_t b = k; b-- > 0;) {
			if (p.x >= out.edges[b]) {
				bin = b;
				break;
			}
		}
		bx[bin].push_back(p.x);
		by[bin].push_back(p.y);
	}

	std::size_t min_count = s.size(), max_count = 0;
	out.bins.resize(k);
	for (std::size_t b = 0; b < k; ++b) {
		Bin& bin = out.bins[b];
		bin.count = by[b].size();
		min_count = std::min(min_count, bin.count);
		max_count = std::max(max_count, bin.count);
		if (bin.count == 0) {
			bin.mean_x = std::numeric_limits<double>::quiet_NaN();
			bin.mean_y = std::numeric_limits<double>::quiet_NaN();
			continue;
		}
		bin.mean_x = std::accumulate(bx[b].begin(), bx[b].end(), 0.0) /
		             static_cast<double>(bin.count);
		bin.mean_y = std::accumulate(by[b].begin(), by[b].end(), 0.0) /
		             static_cast<double>(bin.count);
		if (bin.count == 1) {
			bin.singleton = true;
			bin.se_y = 0.0;
		} else {
			double ss = 0.0;
			for (double v : by[b])
				ss += (v - bin.mean_y) * (v - bin.mean_y);
			double sd = std::sqrt(ss / static_cast<double>(bin.count - 1));
			bin.se_y = sd / std::sqrt(static_cast<double>(bin.count));
		}
	}
	out.unequal_counts = max_count - min_count > 1;
	return out;
}

std::vector<double> make_grid(const XYSample& s, std::size_t grid_points) {
	if (s.empty())
		throw TooFewPoints("grid over an empty sample");
	if (grid_points < 2)
		throw InvalidInput("grid needs at least 2 points");
	double lo = s[0].x, hi = s[0].x;
	for (const auto& p : s) {
		lo = std::min(lo, p.x);
		hi = std::max(hi, p.x);
	}
	std::vector<double> grid(grid_points);
	for (std::size_t i = 0; i < grid_points; ++i)
		grid[i] = lo + (hi - lo) * static_cast<double>(i) /
		                  static_cast<double>(grid_points - 1);
	return grid;
}

std::vector<double> lowess_at(const XYSample& s, double frac, const std::vector<double>& grid) {
	if (s.size() < 5)
		throw TooFewPoints("LOWESS needs n >= 5, got " + std::to_string(s.size()));
	if (!(frac > 0.0 && frac <= 1.0))
		throw InvalidInput("LOWESS fraction must lie in (0,1]");
	require_finite_sample(s);

	const std::size_t n = s.size();
	const std::size_t q = static_cast<std::size_t>(
	    std::ceil(frac * static_cast<double>(n)));

	std::vector<double> fit(grid.size());
	std::vector<std::size_t> order(n);
	for (std::size_t gi = 0; gi < grid.size(); ++gi) {
		const double g = grid[gi];
		std::iota(order.begin(), order.end(), std::size_t{0});
		// nearest q by |x - g|; equal distances resolve to the lower index
		std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
			double da = std::abs(s[a].x - g);
			double db = std::abs(s[b].x - g);
			if (da != db)
				return da < db;
			return a < b;
		});
		double d_max = std::abs(s[order[q - 1]].x - g);

		double sw = 0.0, swu = 0.0, swuu = 0.0, swy = 0.0, swuy = 0.0;
		double plain_sum = 0.0;
		for (std::size_t t = 0; t < q; ++t) {
			const auto& p = s[order[t]];
			double u = p.x - g;
			double w;
			if (d_max == 0.0) {
				w = 1.0; // every selected point sits on the grid location
			} else {
				double ratio = std::abs(u) / d_max;
				double c = 1.0 - ratio * ratio * ratio;
				w = c * c * c;
			}
			sw += w;
			swu += w * u;
			swuu += w * u * u;
			swy += w * p.y;
			swuy += w * u * p.y;
			plain_sum += p.y;
		}

		if (sw <= 0.0) {
			// all selected weights vanished (every point at distance d_max)
			fit[gi] = plain_sum / static_cast<double>(q);
			continue;
		}
		double denom = sw * swuu - swu * swu;
		if (denom <= 1e-12 * sw * swuu || swuu == 0.0) {
			fit[gi] = swy / sw; // collinear-in-x neighborhood: weighted mean
			continue;
		}
		double slope = (sw * swuy - swu * swy) / denom;
		fit[gi] = (swy - slope * swu) / sw; // intercept at u = 0
	}
	return fit;
}

LowessFit lowess_fit(const XYSample& s, double frac, std::size_t grid_points) {
	LowessFit out;
	out.grid = make_grid(s, grid_points);
	out.fit = lowess_at(s, frac, out.grid);
	return out;
}

TrendBand bootstrap_band(const XYSample& s, double frac, std::size_t n_boot,
                         std::uint64_t seed, double level) {
	if (s.size() < 5)
		throw TooFewPoints("bootstrap band needs n >= 5, got " + std::to_string(s.size()));
	if (n_boot < 2)
		throw InvalidInput("bootstrap needs n_boot >= 2");
	if (!(level > 0.0 && level < 1.0))
		throw InvalidInput("band level must lie inside (0,1)");

	TrendBand band;
	band.frac = frac;
	band.n_boot = n_boot;
	band.seed = seed;
	band.grid = make_grid(s, 100);
	band.fit = lowess_at(s, frac, band.grid);

	const std::size_t n = s.size();
	std::vector<std::vector<double>> fits; // usable resample fits
	fits.reserve(n_boot);
	std::size_t dropped = 0;
	for (std::size_t rep = 0; rep < n_boot; ++rep) {
		std::mt19937_64 gen(derive_stream(seed, rep));
		XYSample resample(n);
		std::set<double> distinct;
		for (std::size_t i = 0; i < n; ++i) {
			resample[i] = s[gen() % n];
			distinct.insert(resample[i].x);
		}
		// a resample collapsed onto one x value supports no local line
		if (distinct.size() < 2) {
			++dropped;
			continue;
		}
		fits.push_back(lowess_at(resample, frac, band.grid));
	}
	if (fits.empty())
		throw AllXEqual("every bootstrap resample collapsed onto a single x value");

	const double p_low = (1.0 - level) / 2.0;
	const double p_high = 1.0 - p_low;
	band.band_low.resize(band.grid.size());
	band.band_high.resize(band.grid.size());
	band.excluded.assign(band.grid.size(), dropped);
	std::vector<double> column(fits.size());
	for (std::size_t gi = 0; gi < band.grid.size(); ++gi) {
		for (std::size_t r = 0; r < fits.size(); ++r)
			column[r] = fits[r][gi];
		std::sort(column.begin(), column.end());
		band.band_low[gi] = interpolated_quantile(column, p_low);
		band.band_high[gi] = interpolated_quantile(column, p_high);
	}
	return band;
}

} // namespace specpred
