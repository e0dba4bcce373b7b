#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specpred/errors.hpp"
#include "specpred/pipeline.hpp"

namespace {

using namespace specpred;

std::string default_prefix(const std::string& input) {
	std::size_t slash = input.find_last_of("/\\");
	std::string base = slash == std::string::npos ? input : input.substr(slash + 1);
	std::size_t dot = base.find_last_of('.');
	if (dot != std::string::npos && dot > 0)
		base = base.substr(0, dot);
	return base;
}

void print_warnings(const std::vector<std::string>& warnings) {
	for (const auto& w : warnings)
		std::cerr << "warning: " << w << "\n";
}

struct InputFlags {
	std::string input;
	std::string format = "wide_csv";
	double dt = 1.0;
	std::string missing = "drop";
	std::size_t max_len = 4096;
	std::string take = "head";
	bool zeros_missing = false;
	std::string output; // prefix; empty = derive from input

	void attach(CLI::App* cmd) {
		cmd->add_option("input", input, "input file")->required();
		cmd->add_option("--format", format, "input format: wide_csv, long_csv, jsonl")
		    ->default_val(format);
		cmd->add_option("--dt", dt, "time between samples")->default_val(dt);
		cmd->add_option("--missing", missing,
		                "missing-value policy: drop, interpolate, error")
		    ->default_val(missing);
		cmd->add_option("--max-len", max_len, "truncate series to this many samples (0 = unlimited)")
		    ->default_val(max_len);
		cmd->add_option("--take", take, "which end to keep when truncating: head, tail")
		    ->default_val(take);
		cmd->add_flag("--zeros-missing", zeros_missing, "treat literal zeros as missing");
		cmd->add_option("-o,--output", output, "output file prefix (default: input stem)");
	}

	IoOptions io() const {
		IoOptions o;
		o.format = parse_file_format(format);
		o.dt = dt;
		if (missing == "drop")
			o.policy.missing = MissingPolicy::drop;
		else if (missing == "interpolate")
			o.policy.missing = MissingPolicy::linear_interpolate;
		else if (missing == "error")
			o.policy.missing = MissingPolicy::error;
		else
			throw std::invalid_argument("unknown missing policy '" + missing + "'");
		o.policy.max_len = max_len;
		if (take == "head")
			o.policy.take = TakeSide::head;
		else if (take == "tail")
			o.policy.take = TakeSide::tail;
		else
			throw std::invalid_argument("unknown take side '" + take + "'");
		o.policy.zeros_as_missing = zeros_missing;
		return o;
	}

	std::string prefix() const { return output.empty() ? default_prefix(input) : output; }
};

SpectralConfig spectral_config(const std::string& taper, double power_floor) {
	SpectralConfig cfg;
	if (taper == "hann")
		cfg.taper = Taper::hann;
	else if (taper == "none")
		cfg.taper = Taper::none;
	else
		throw std::invalid_argument("unknown taper '" + taper + "'");
	if (!(power_floor > 0.0))
		throw std::invalid_argument("power floor must be positive");
	cfg.power_floor = power_floor;
	return cfg;
}

std::pair<std::size_t, std::size_t> parse_fit_range(const std::string& text) {
	std::size_t colon = text.find(':');
	if (colon == std::string::npos || colon == 0 || colon + 1 >= text.size())
		throw std::invalid_argument("fit range must look like lo:hi");
	try {
		std::size_t lo = std::stoul(text.substr(0, colon));
		std::size_t hi = std::stoul(text.substr(colon + 1));
		return {lo, hi};
	} catch (const std::exception&) {
		throw std::invalid_argument("fit range must look like lo:hi");
	}
}

int cmd_omega(const InputFlags& in, const std::string& taper, double power_floor) {
	OmegaRun run = run_omega(in.input, in.io(), spectral_config(taper, power_floor),
	                         in.prefix());
	print_warnings(run.preprocess_warnings);
	for (const auto& [series, reason] : run.result.skipped)
		std::cerr << "warning: skipped series '" << series << "': " << reason << "\n";
	std::cout << "mean omega " << run.result.mean_omega << " over "
	          << run.result.reports.size() << " series (" << run.result.skipped.size()
	          << " skipped) in " << run.elapsed_seconds << " s\n"
	          << "wrote " << run.json_path << " and " << run.csv_path << "\n";
	return 0;
}

int cmd_lle(const InputFlags& in, const LleConfig& cfg) {
	LleRun run = run_lle(in.input, in.io(), cfg, in.prefix());
	print_warnings(run.preprocess_warnings);
	for (const auto& [series, reason] : run.result.skipped)
		std::cerr << "warning: skipped series '" << series << "': " << reason << "\n";
	for (const auto& r : run.result.reports)
		if (r.low_confidence)
			std::cerr << "warning: series '" << r.series << "': low-confidence fit (r2 "
			          << r.fit_r2 << "); the divergence curve is saturated or noisy\n";
	std::cout << "mean lambda_max " << run.result.mean_lambda << " over "
	          << run.result.reports.size() << " series (" << run.result.skipped.size()
	          << " skipped)\n"
	          << "wrote " << run.json_path << " and " << run.csv_path << "\n";
	return 0;
}

int cmd_synth(const SynthParams& params, const std::string& prefix) {
	SynthRun run = run_synth(params, prefix);
	for (const auto& item : run.items)
		if (!item.ok)
			std::cerr << "warning: " << item.name << ": " << item.error << "\n";
	std::cout << "generated " << run.items.size() - run.n_failed << " series ("
	          << run.n_failed << " failed)\n"
	          << "wrote " << run.csv_path << " and " << run.manifest_path << "\n";
	return 0;
}

int cmd_sweep(const SweepParams& params, const std::string& prefix) {
	SweepRun run = run_sweep(params, prefix);
	for (const auto& item : run.items)
		if (!item.ok)
			std::cerr << "warning: " << item.name << ": " << item.error << "\n";
	for (const auto& f : run.eval_failures)
		std::cerr << "warning: " << f.name << ": " << f.error << "\n";
	std::cout << run.omegas.size() << " series evaluated (" << run.n_failed
	          << " calibration failures)\n";
	if (run.seasonal_corr)
		std::cout << "spearman(omega, smape): naive " << run.naive_corr->spearman_rho
		          << ", seasonal_naive " << run.seasonal_corr->spearman_rho << "\n";
	std::cout << "wrote " << run.metrics_path << ", " << run.omega_path << " and "
	          << run.summary_path << "\n";
	return 0;
}

int cmd_stats(const std::string& metrics_csv, const std::string& omega_csv,
              const StatsParams& params, const std::string& prefix) {
	StatsRun run = run_stats(metrics_csv, omega_csv, params, prefix);
	print_warnings(run.warnings);
	std::cout << "n=" << run.n << ": pearson " << run.correlations.pearson_r << " ["
	          << run.correlations.ci_low << ", " << run.correlations.ci_high
	          << "], spearman " << run.correlations.spearman_rho << " (p="
	          << run.correlations.spearman_p << ")\n";
	if (run.delta)
		std::cout << "delta " << run.delta->model_a << " vs " << run.delta->model_b
		          << ": theil-sen slope " << run.delta->theil_sen << " over "
		          << run.delta->records.size() << " datasets\n";
	std::cout << "wrote " << run.json_path;
	if (!run.trend_csv_path.empty())
		std::cout << ", " << run.trend_csv_path;
	if (!run.delta_csv_path.empty())
		std::cout << ", " << run.delta_csv_path;
	std::cout << "\n";
	return 0;
}

int cmd_recommend(const InputFlags& in, const RecommendParams& params) {
	RecommendRun run = run_recommend(in.input, in.io(), params, in.prefix());
	print_warnings(run.preprocess_warnings);
	const Recommendation& rec = run.rec;
	std::cout << rec.dataset << ": regime " << to_string(rec.regime) << " (omega "
	          << rec.omega;
	if (rec.lle)
		std::cout << ", lle " << *rec.lle;
	std::cout << ") -> ";
	for (std::size_t i = 0; i < rec.families.size(); ++i)
		std::cout << (i ? ", " : "") << to_string(rec.families[i].family);
	if (rec.confident) {
		std::cout << "; confident\n";
	} else {
		std::cout << "; check:";
		for (auto w : rec.warnings)
			std::cout << ' ' << to_string(w);
		std::cout << "\n";
	}
	std::cout << "wrote " << run.json_path << "\n";
	return 0;
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"spectral predictability and chaos descriptors for time series"};
	app.require_subcommand(1);

	// omega
	auto* omega_cmd = app.add_subcommand("omega", "per-series and dataset-mean omega");
	InputFlags omega_in;
	omega_in.attach(omega_cmd);
	std::string omega_taper = "hann";
	double omega_floor = 1e-12;
	omega_cmd->add_option("--taper", omega_taper, "taper: hann, none")->default_val("hann");
	omega_cmd->add_option("--power-floor", omega_floor, "degeneracy threshold")
	    ->default_val(omega_floor);

	// lle
	auto* lle_cmd = app.add_subcommand("lle", "largest Lyapunov exponent (Rosenstein)");
	InputFlags lle_in;
	lle_in.attach(lle_cmd);
	LleConfig lle_cfg;
	std::string fit_text;
	std::int64_t theiler = -1;
	lle_cmd->add_option("--m", lle_cfg.m, "embedding dimension")->default_val(lle_cfg.m);
	lle_cmd->add_option("--tau", lle_cfg.tau, "embedding delay")->default_val(lle_cfg.tau);
	lle_cmd->add_option("--kmax", lle_cfg.k_max, "divergence horizon in steps")
	    ->default_val(lle_cfg.k_max);
	lle_cmd->add_option("--fit", fit_text, "slope fit range lo:hi (default 1:20)");
	lle_cmd->add_option("--theiler", theiler, "temporal exclusion window (default m*tau)");

	// synth
	auto* synth_cmd = app.add_subcommand("synth", "omega-calibrated synthetic signals");
	SynthParams synth_params;
	std::string synth_targets = "0.2:0.8:0.1";
	std::string synth_prefix = "synth";
	synth_cmd->add_option("--targets", synth_targets, "levels as start:stop:step or a,b,c")
	    ->default_val(synth_targets);
	synth_cmd->add_option("--per-level", synth_params.per_level, "series per level")
	    ->default_val(synth_params.per_level);
	synth_cmd->add_option("--length", synth_params.length, "series length")
	    ->default_val(synth_params.length);
	synth_cmd->add_option("--seed", synth_params.seed, "master seed")
	    ->envname("SPECPRED_SEED");
	synth_cmd->add_option("--tolerance", synth_params.tolerance, "calibration tolerance")
	    ->default_val(synth_params.tolerance);
	synth_cmd->add_option("--harmonics", synth_params.n_harmonics,
	                      "peaked bins in the spectral mixture")
	    ->default_val(synth_params.n_harmonics);
	synth_cmd->add_option("--max-iters", synth_params.max_iters, "bisection iteration cap")
	    ->default_val(synth_params.max_iters);
	synth_cmd->add_option("-o,--output", synth_prefix, "output file prefix")
	    ->default_val(synth_prefix);

	// sweep
	auto* sweep_cmd = app.add_subcommand(
	    "sweep", "synthetic sweep + baseline forecasts + omega/error correlation");
	SweepParams sweep_params;
	std::string sweep_targets = "0.2:0.8:0.1";
	std::string sweep_prefix = "sweep";
	sweep_cmd->add_option("--targets", sweep_targets, "levels as start:stop:step or a,b,c")
	    ->default_val(sweep_targets);
	sweep_cmd->add_option("--per-level", sweep_params.synth.per_level, "series per level")
	    ->default_val(sweep_params.synth.per_level);
	sweep_cmd->add_option("--length", sweep_params.synth.length, "series length")
	    ->default_val(sweep_params.synth.length);
	sweep_cmd->add_option("--seed", sweep_params.synth.seed, "master seed")
	    ->envname("SPECPRED_SEED");
	sweep_cmd->add_option("--tolerance", sweep_params.synth.tolerance,
	                      "calibration tolerance")
	    ->default_val(sweep_params.synth.tolerance);
	sweep_cmd->add_option("--harmonics", sweep_params.synth.n_harmonics,
	                      "peaked bins in the spectral mixture")
	    ->default_val(sweep_params.synth.n_harmonics);
	sweep_cmd->add_option("--max-iters", sweep_params.synth.max_iters,
	                      "bisection iteration cap")
	    ->default_val(sweep_params.synth.max_iters);
	sweep_cmd->add_option("--context", sweep_params.context_length, "context window")
	    ->default_val(sweep_params.context_length);
	sweep_cmd->add_option("--horizon", sweep_params.horizon, "forecast horizon")
	    ->default_val(sweep_params.horizon);
	sweep_cmd->add_option("-o,--output", sweep_prefix, "output file prefix")
	    ->default_val(sweep_prefix);

	// stats
	auto* stats_cmd =
	    app.add_subcommand("stats", "correlations, quantile bins, LOWESS trend band");
	std::string stats_metrics, stats_omega, stats_delta, stats_prefix = "stats";
	StatsParams stats_params;
	stats_cmd->add_option("metrics", stats_metrics, "MetricRow CSV")->required();
	stats_cmd->add_option("omega", stats_omega, "dataset,omega[,lle] CSV")->required();
	stats_cmd->add_option("--bins", stats_params.bins, "quantile bin count")
	    ->default_val(stats_params.bins);
	stats_cmd->add_option("--frac", stats_params.frac, "LOWESS smoothing fraction")
	    ->default_val(stats_params.frac);
	stats_cmd->add_option("--nboot", stats_params.n_boot, "bootstrap resamples")
	    ->default_val(stats_params.n_boot);
	stats_cmd->add_option("--seed", stats_params.seed, "bootstrap seed")
	    ->envname("SPECPRED_SEED");
	stats_cmd->add_option("--confidence", stats_params.confidence, "CI level")
	    ->default_val(stats_params.confidence);
	stats_cmd->add_option("--delta", stats_delta,
	                      "pairwise mode: modelA:modelB relative-error records");
	stats_cmd->add_option("-o,--output", stats_prefix, "output file prefix")
	    ->default_val(stats_prefix);

	// recommend
	auto* rec_cmd =
	    app.add_subcommand("recommend", "regime, reliability warnings, model families");
	InputFlags rec_in;
	rec_in.attach(rec_cmd);
	RecommendParams rec_params;
	std::string rec_taper = "hann";
	double rec_floor = 1e-12;
	rec_cmd->add_option("--high", rec_params.policy.high_threshold, "high-omega threshold")
	    ->default_val(rec_params.policy.high_threshold);
	rec_cmd->add_option("--low", rec_params.policy.low_threshold, "low-omega threshold")
	    ->default_val(rec_params.policy.low_threshold);
	rec_cmd->add_option("--min-length", rec_params.policy.min_length,
	                    "warn when a series is not longer than this")
	    ->default_val(rec_params.policy.min_length);
	rec_cmd->add_option("--drift", rec_params.policy.stationarity_drift,
	                    "split-half omega drift threshold")
	    ->default_val(rec_params.policy.stationarity_drift);
	rec_cmd->add_flag("--exogenous", rec_params.policy.exogenous_dominated,
	                  "flag exogenous-driven dynamics (domain knowledge)");
	rec_cmd->add_flag("--lle", rec_params.with_lle, "also estimate the dataset LLE");
	rec_cmd->add_option("--taper", rec_taper, "taper: hann, none")->default_val("hann");
	rec_cmd->add_option("--power-floor", rec_floor, "degeneracy threshold")
	    ->default_val(rec_floor);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		return app.exit(e) == 0 ? 0 : 1;
	}

	try {
		if (omega_cmd->parsed())
			return cmd_omega(omega_in, omega_taper, omega_floor);
		if (lle_cmd->parsed()) {
			if (!fit_text.empty()) {
				auto [lo, hi] = parse_fit_range(fit_text);
				lle_cfg.fit_lo = lo;
				lle_cfg.fit_hi = hi;
			}
			if (theiler >= 0)
				lle_cfg.theiler = static_cast<std::size_t>(theiler);
			return cmd_lle(lle_in, lle_cfg);
		}
		if (synth_cmd->parsed()) {
			synth_params.targets = specpred::parse_targets(synth_targets);
			return cmd_synth(synth_params, synth_prefix);
		}
		if (sweep_cmd->parsed()) {
			sweep_params.synth.targets = specpred::parse_targets(sweep_targets);
			return cmd_sweep(sweep_params, sweep_prefix);
		}
		if (stats_cmd->parsed()) {
			if (!stats_delta.empty()) {
				std::size_t colon = stats_delta.find(':');
				if (colon == std::string::npos || colon == 0 ||
				    colon + 1 >= stats_delta.size())
					throw std::invalid_argument("--delta must look like modelA:modelB");
				stats_params.delta = {stats_delta.substr(0, colon),
				                      stats_delta.substr(colon + 1)};
			}
			return cmd_stats(stats_metrics, stats_omega, stats_params, stats_prefix);
		}
		if (rec_cmd->parsed()) {
			rec_params.spectral = spectral_config(rec_taper, rec_floor);
			return cmd_recommend(rec_in, rec_params);
		}
	} catch (const std::invalid_argument& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 1;
	} catch (const specpred::Error& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	}
	return 1;
}
