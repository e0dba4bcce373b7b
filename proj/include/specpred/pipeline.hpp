#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specpred/chaos.hpp"
#include "specpred/forecast_metrics.hpp"
#include "specpred/selector.hpp"
#include "specpred/series_io.hpp"
#include "specpred/spectral.hpp"
#include "specpred/statlab.hpp"
#include "specpred/synthgen.hpp"
#include "specpred/types.hpp"

// Command cores shared by the CLI binary and the integration tests: each
// run_* function does the work and writes the output files, returning what
// the caller needs for its summary lines.

namespace specpred {

struct IoOptions {
	FileFormat format = FileFormat::wide_csv;
	PreprocessPolicy policy;
	double dt = 1.0;
};

struct OmegaRun {
	DatasetOmega result;
	std::vector<std::string> preprocess_warnings;
	double elapsed_seconds = 0.0;
	std::string json_path;
	std::string csv_path;
};

/// Writes <prefix>.omega.json and <prefix>.omega.csv (per-series rows named
/// <dataset>/<series> plus one dataset-mean row).
OmegaRun run_omega(const std::string& input, const IoOptions& io,
                   const SpectralConfig& cfg, const std::string& out_prefix);

struct LleRun {
	DatasetLle result;
	std::vector<std::string> preprocess_warnings;
	std::string json_path;
	std::string csv_path;
};

/// Writes <prefix>.lle.json and <prefix>.lle.csv.
LleRun run_lle(const std::string& input, const IoOptions& io, const LleConfig& cfg,
               const std::string& out_prefix);

struct SynthParams {
	std::vector<double> targets; // default 0.2..0.8 step 0.1 when empty
	std::size_t per_level = 10;
	std::size_t length = 4096;
	std::uint64_t seed = 0;
	double tolerance = 0.02;
	std::size_t n_harmonics = 1;
	std::size_t max_iters = 60;
};

struct SynthRun {
	std::vector<SweepItem> items;
	std::size_t n_failed = 0;
	std::string csv_path;
	std::string manifest_path;
};

/// Writes <prefix>.csv (one column per successful series) and
/// <prefix>.manifest.json. Calibration failures are manifest entries, not
/// errors.
SynthRun run_synth(const SynthParams& p, const std::string& out_prefix);

struct SweepParams {
	SynthParams synth;
	std::size_t context_length = 512;
	std::size_t horizon = 96;
};

struct EvalFailure {
	std::string name;
	std::string error;
};

struct SweepRun {
	std::vector<SweepItem> items;
	std::vector<MetricRow> metrics;
	std::vector<std::pair<std::string, double>> omegas; // series name -> context omega
	std::optional<CorrelationSummary> naive_corr;       // absent when n < 4
	std::optional<CorrelationSummary> seasonal_corr;
	std::vector<EvalFailure> eval_failures;
	std::size_t n_failed = 0; // calibration failures
	std::string metrics_path;
	std::string omega_path;
	std::string summary_path;
};

/// Generate the sweep, forecast each series with naive + seasonal naive over
/// a context/horizon split, correlate context-window omega with sMAPE.
/// Writes <prefix>.metrics.csv, <prefix>.omega.csv, <prefix>.summary.json.
/// Throws AllSeriesFailed when every calibration fails.
SweepRun run_sweep(const SweepParams& p, const std::string& out_prefix);

struct StatsParams {
	std::size_t bins = 6;
	double frac = 0.4;
	std::size_t n_boot = 300;
	std::uint64_t seed = 0;
	double confidence = 0.95;
	std::optional<std::pair<std::string, std::string>> delta; // model A, model B
};

struct DeltaSummary {
	std::string model_a;
	std::string model_b;
	std::vector<DeltaRecord> records;
	double theil_sen = 0.0;
	std::vector<std::pair<std::string, std::string>> skipped; // (dataset, reason)
};

struct StatsRun {
	std::size_t n = 0;
	CorrelationSummary correlations;
	std::optional<BinSummary> bins;
	std::optional<TrendBand> trend;
	std::optional<DeltaSummary> delta;
	std::vector<std::string> warnings;
	std::string json_path;
	std::string trend_csv_path; // empty when the trend band was skipped
	std::string delta_csv_path; // empty when delta mode is off
};

/// Join a MetricRow CSV with a `dataset,omega[,lle]` CSV and run the
/// correlation/bin/trend statistics on the pooled (omega, smape) points.
/// Unmatched dataset keys are an error listing the offenders.
StatsRun run_stats(const std::string& metrics_csv, const std::string& omega_csv,
                   const StatsParams& p, const std::string& out_prefix);

struct RecommendParams {
	SelectorPolicy policy;
	SpectralConfig spectral;
	bool with_lle = false;
	LleConfig lle;
};

struct RecommendRun {
	Recommendation rec;
	std::vector<std::string> preprocess_warnings;
	std::string json_path;
};

/// Writes <prefix>.recommendation.json.
RecommendRun run_recommend(const std::string& input, const IoOptions& io,
                           const RecommendParams& p, const std::string& out_prefix);

/// Parse "start:stop:step" or a comma-separated list into target levels.
std::vector<double> parse_targets(const std::string& text);

/// The `dataset,omega[,lle]` join table used by run_stats.
std::vector<std::pair<std::string, double>> read_omega_csv(const std::string& path);

} // namespace specpred
