#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace specpred {

struct XY {
	double x = 0.0;
	double y = 0.0;
};

using XYSample = std::vector<XY>;

struct CorrelationSummary {
	std::size_t n = 0;
	double pearson_r = 0.0;
	double ci_low = 0.0;
	double ci_high = 0.0;
	double spearman_rho = 0.0;
	double spearman_p = 1.0; // t approximation, n-2 degrees of freedom
};

/// 95% (or other) CI for a correlation via the Fisher z-transform:
/// tanh(atanh(r) +- z_crit/sqrt(n-3)). Needs n >= 4.
std::pair<double, double> fisher_ci(double r, std::size_t n, double confidence = 0.95);

/// Sample Pearson correlation plus its Fisher CI (pearson fields only).
CorrelationSummary pearson_with_fisher_ci(const XYSample& s, double confidence = 0.95);

/// Pearson correlation of mid-ranks (average ranks for ties).
double spearman(const XYSample& s);

/// Two-sided p for a rank correlation via t = rho*sqrt((n-2)/(1-rho^2)).
double spearman_pvalue(double rho, std::size_t n);

/// All correlation fields in one pass.
CorrelationSummary correlation_summary(const XYSample& s, double confidence = 0.95);

/// Median of all pairwise slopes (equal-x pairs skipped; even counts use the
/// midpoint of the two central values).
double theil_sen_slope(const XYSample& s);

struct Bin {
	double mean_x = 0.0;
	double mean_y = 0.0;
	double se_y = 0.0;
	std::size_t count = 0;
	bool singleton = false; // se_y reported as 0 for a single point
};

struct BinSummary {
	std::vector<double> edges; // k+1 quantile edges of x
	std::vector<Bin> bins;
	bool unequal_counts = false; // counts differ by more than 1 (duplicated x)
};

/// Edges at the i/k sample quantiles of x; each point goes to the highest bin
/// whose lower edge it meets.
BinSummary quantile_bins(const XYSample& s, std::size_t k = 6);

/// Linear-interpolation quantile of an ascending-sorted vector, p in [0,1].
double interpolated_quantile(const std::vector<double>& sorted, double p);

/// grid_points evenly spaced values spanning the observed x range.
std::vector<double> make_grid(const XYSample& s, std::size_t grid_points = 100);

/// LOWESS estimate at each grid value: degree-1 weighted least squares over
/// the ceil(frac*n) nearest points with tricube weights, zero robustness
/// iterations.
std::vector<double> lowess_at(const XYSample& s, double frac, const std::vector<double>& grid);

struct LowessFit {
	std::vector<double> grid;
	std::vector<double> fit;
};

LowessFit lowess_fit(const XYSample& s, double frac = 0.4, std::size_t grid_points = 100);

struct TrendBand {
	std::vector<double> grid;
	std::vector<double> fit;       // LOWESS on the original sample
	std::vector<double> band_low;  // bootstrap percentile bounds
	std::vector<double> band_high;
	std::vector<std::size_t> excluded; // per grid point: resamples without a usable fit
	double frac = 0.4;
	std::size_t n_boot = 300;
	std::uint64_t seed = 0;
};

/// Percentile band over n_boot with-replacement resamples, LOWESS per
/// resample on a common grid. Per-replicate RNG streams make the band
/// independent of scheduling.
TrendBand bootstrap_band(const XYSample& s, double frac = 0.4, std::size_t n_boot = 300,
                         std::uint64_t seed = 0, double level = 0.95);

} // namespace specpred
