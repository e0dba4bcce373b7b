#include "specpred/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "specpred/baselines.hpp"
#include "specpred/errors.hpp"

namespace specpred {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path) {
	std::ofstream out(path);
	if (!out)
		throw Error("cannot write '" + path + "'");
	out.precision(17);
	return out;
}

void write_json(const std::string& path, const json& j) {
	auto out = open_out(path);
	out << j.dump(2) << "\n";
}

json report_json(const SpectralReport& r) {
	return json{{"series", r.series},     {"T_used", r.t_used},
	            {"K", r.k},               {"H_nats", r.entropy},
	            {"H_max_nats", r.entropy_max}, {"omega", r.omega},
	            {"peak_bins", r.peak_bins},    {"degenerate", r.degenerate}};
}

json skipped_json(const std::vector<std::pair<std::string, std::string>>& skipped) {
	json arr = json::array();
	for (const auto& [name, reason] : skipped)
		arr.push_back({{"series", name}, {"reason", reason}});
	return arr;
}

json corr_json(const CorrelationSummary& c) {
	return json{{"n", c.n},
	            {"pearson_r", c.pearson_r},
	            {"ci_low", c.ci_low},
	            {"ci_high", c.ci_high},
	            {"spearman_rho", c.spearman_rho},
	            {"spearman_p", c.spearman_p}};
}

Dataset load_and_prepare(const std::string& input, const IoOptions& io,
                         std::vector<std::string>& warnings) {
	Dataset d = load_dataset(input, io.format, io.dt);
	PreprocessResult pre = preprocess(d, io.policy);
	warnings = pre.warnings;
	return pre.dataset;
}

// Dominant-period season estimate from the context's top power bin.
std::size_t estimate_season(const SpectralReport& ctx_report, std::size_t context_length) {
	std::size_t peak = ctx_report.peak_bins.empty() ? 1 : ctx_report.peak_bins[0];
	double period = static_cast<double>(context_length) / static_cast<double>(peak);
	auto season = static_cast<std::size_t>(std::llround(period));
	return std::clamp<std::size_t>(season, 1, context_length);
}

std::vector<double> default_targets() {
	return {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8};
}

} // namespace

OmegaRun run_omega(const std::string& input, const IoOptions& io,
                   const SpectralConfig& cfg, const std::string& out_prefix) {
	OmegaRun run;
	Dataset d = load_and_prepare(input, io, run.preprocess_warnings);

	auto t0 = std::chrono::steady_clock::now();
	run.result = omega_dataset(d, cfg);
	run.elapsed_seconds =
	    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

	run.json_path = out_prefix + ".omega.json";
	run.csv_path = out_prefix + ".omega.csv";

	json reports = json::array();
	for (const auto& r : run.result.reports)
		reports.push_back(report_json(r));
	write_json(run.json_path,
	           json{{"dataset", d.name},
	                {"mean_omega", run.result.mean_omega},
	                {"n_series", run.result.reports.size()},
	                {"n_skipped", run.result.skipped.size()},
	                {"preprocess_warnings", run.preprocess_warnings},
	                {"reports", reports},
	                {"skipped", skipped_json(run.result.skipped)},
	                {"elapsed_seconds", run.elapsed_seconds}});

	auto csv = open_out(run.csv_path);
	csv << "dataset,omega\n";
	for (const auto& r : run.result.reports)
		csv << d.name << '/' << r.series << ',' << r.omega << "\n";
	csv << d.name << ',' << run.result.mean_omega << "\n";
	return run;
}

LleRun run_lle(const std::string& input, const IoOptions& io, const LleConfig& cfg,
               const std::string& out_prefix) {
	LleRun run;
	Dataset d = load_and_prepare(input, io, run.preprocess_warnings);
	run.result = lle_dataset(d, cfg);

	run.json_path = out_prefix + ".lle.json";
	run.csv_path = out_prefix + ".lle.csv";

	json reports = json::array();
	for (const auto& r : run.result.reports)
		reports.push_back(json{{"series", r.series},
		                       {"lambda_max", r.lambda_max},
		                       {"n_pairs", r.n_pairs},
		                       {"fit_r2", r.fit_r2},
		                       {"low_confidence", r.low_confidence},
		                       {"m", r.m},
		                       {"tau", r.tau},
		                       {"k_max", r.k_max},
		                       {"fit_lo", r.fit_lo},
		                       {"fit_hi", r.fit_hi}});
	write_json(run.json_path, json{{"dataset", d.name},
	                               {"mean_lambda_max", run.result.mean_lambda},
	                               {"n_series", run.result.reports.size()},
	                               {"n_skipped", run.result.skipped.size()},
	                               {"preprocess_warnings", run.preprocess_warnings},
	                               {"reports", reports},
	                               {"skipped", skipped_json(run.result.skipped)}});

	auto csv = open_out(run.csv_path);
	csv << "dataset,lambda_max\n";
	for (const auto& r : run.result.reports)
		csv << d.name << '/' << r.series << ',' << r.lambda_max << "\n";
	csv << d.name << ',' << run.result.mean_lambda << "\n";
	return run;
}

SynthRun run_synth(const SynthParams& p, const std::string& out_prefix) {
	SynthRun run;
	std::vector<double> targets = p.targets.empty() ? default_targets() : p.targets;
	run.items = generate_sweep(targets, p.per_level, p.length, p.seed, p.tolerance,
	                           p.n_harmonics, p.max_iters);
	for (const auto& item : run.items)
		if (!item.ok)
			++run.n_failed;

	run.csv_path = out_prefix + ".csv";
	run.manifest_path = out_prefix + ".manifest.json";

	// Wide CSV over the successful series only.
	std::vector<const SweepItem*> ok_items;
	for (const auto& item : run.items)
		if (item.ok)
			ok_items.push_back(&item);
	auto csv = open_out(run.csv_path);
	for (std::size_t i = 0; i < ok_items.size(); ++i)
		csv << (i ? "," : "") << ok_items[i]->result.series.name;
	csv << "\n";
	for (std::size_t t = 0; t < p.length; ++t) {
		for (std::size_t i = 0; i < ok_items.size(); ++i)
			csv << (i ? "," : "") << ok_items[i]->result.series.values[t];
		csv << "\n";
	}

	json items = json::array();
	for (const auto& item : run.items) {
		json j{{"name", item.name},
		       {"target", item.target},
		       {"replicate", item.replicate},
		       {"ok", item.ok}};
		if (item.ok) {
			j["achieved_omega"] = item.result.achieved_omega;
			j["mixing_weight"] = item.result.mixing_weight;
			j["iterations_used"] = item.result.iterations_used;
		} else {
			j["error"] = item.error;
			j["best_alpha"] = item.best_alpha;
			j["best_omega"] = item.best_omega;
		}
		items.push_back(std::move(j));
	}
	write_json(run.manifest_path, json{{"length", p.length},
	                                   {"seed", p.seed},
	                                   {"tolerance", p.tolerance},
	                                   {"n_harmonics", p.n_harmonics},
	                                   {"max_iters", p.max_iters},
	                                   {"per_level", p.per_level},
	                                   {"targets", targets},
	                                   {"n_failed", run.n_failed},
	                                   {"items", items}});
	return run;
}

SweepRun run_sweep(const SweepParams& p, const std::string& out_prefix) {
	if (p.context_length < 4 || p.horizon < 1)
		throw InvalidInput("sweep needs context_length >= 4 and horizon >= 1");
	if (p.context_length + p.horizon > p.synth.length)
		throw InvalidInput("sweep needs context_length + horizon <= length");

	SweepRun run;
	std::vector<double> targets =
	    p.synth.targets.empty() ? default_targets() : p.synth.targets;
	run.items = generate_sweep(targets, p.synth.per_level, p.synth.length, p.synth.seed,
	                           p.synth.tolerance, p.synth.n_harmonics, p.synth.max_iters);
	for (const auto& item : run.items)
		if (!item.ok)
			++run.n_failed;
	if (run.n_failed == run.items.size())
		throw AllSeriesFailed("sweep: every calibration failed");

	XYSample naive_points, seasonal_points;
	for (const auto& item : run.items) {
		if (!item.ok)
			continue;
		const auto& v = item.result.series.values;
		try {
			ForecastTask task;
			task.context.assign(v.begin(),
			                    v.begin() + static_cast<std::ptrdiff_t>(p.context_length));
			task.horizon = p.horizon;
			std::vector<double> target(
			    v.begin() + static_cast<std::ptrdiff_t>(p.context_length),
			    v.begin() + static_cast<std::ptrdiff_t>(p.context_length + p.horizon));

			TimeSeries ctx{item.name + ":context", task.context, 1.0};
			SpectralReport ctx_report = omega(ctx);
			task.season_length = estimate_season(ctx_report, p.context_length);

			std::vector<double> naive = naive_forecast(task);
			std::vector<double> seasonal = seasonal_naive_forecast(task);

			MetricRow naive_row{"naive", ModelFamily::statistical, item.name,
			                    smape(target, naive), mse(target, naive)};
			MetricRow seasonal_row{"seasonal_naive", ModelFamily::statistical, item.name,
			                       smape(target, seasonal), mse(target, seasonal)};
			run.metrics.push_back(naive_row);
			run.metrics.push_back(seasonal_row);
			run.omegas.emplace_back(item.name, ctx_report.omega);
			naive_points.push_back({ctx_report.omega, naive_row.smape});
			seasonal_points.push_back({ctx_report.omega, seasonal_row.smape});
		} catch (const Error& e) {
			run.eval_failures.push_back({item.name, e.what()});
		}
	}

	if (naive_points.size() >= 4) {
		run.naive_corr = correlation_summary(naive_points);
		run.seasonal_corr = correlation_summary(seasonal_points);
	}

	run.metrics_path = out_prefix + ".metrics.csv";
	run.omega_path = out_prefix + ".omega.csv";
	run.summary_path = out_prefix + ".summary.json";

	write_metric_csv(run.metrics_path, run.metrics);

	auto omega_csv = open_out(run.omega_path);
	omega_csv << "dataset,omega\n";
	for (const auto& [name, value] : run.omegas)
		omega_csv << name << ',' << value << "\n";

	json failed = json::array();
	for (const auto& item : run.items)
		if (!item.ok)
			failed.push_back({{"name", item.name},
			                  {"target", item.target},
			                  {"replicate", item.replicate},
			                  {"error", item.error}});
	json eval_failed = json::array();
	for (const auto& f : run.eval_failures)
		eval_failed.push_back({{"name", f.name}, {"error", f.error}});
	json correlations;
	correlations["naive"] = run.naive_corr ? corr_json(*run.naive_corr) : json();
	correlations["seasonal_naive"] =
	    run.seasonal_corr ? corr_json(*run.seasonal_corr) : json();
	write_json(run.summary_path,
	           json{{"length", p.synth.length},
	                {"seed", p.synth.seed},
	                {"context_length", p.context_length},
	                {"horizon", p.horizon},
	                {"per_level", p.synth.per_level},
	                {"targets", targets},
	                {"tolerance", p.synth.tolerance},
	                {"n_harmonics", p.synth.n_harmonics},
	                {"n_series", run.omegas.size()},
	                {"n_failed", run.n_failed},
	                {"correlations", correlations},
	                {"failed", failed},
	                {"eval_failures", eval_failed}});
	return run;
}

std::vector<std::pair<std::string, double>> read_omega_csv(const std::string& path) {
	std::ifstream in(path);
	if (!in)
		throw ParseError("cannot open '" + path + "'");
	std::string line;
	if (!std::getline(in, line))
		throw ParseError(path + ": empty file");
	if (!line.empty() && line.back() == '\r')
		line.pop_back();
	std::stringstream hs(line);
	std::vector<std::string> header;
	std::string cell;
	while (std::getline(hs, cell, ','))
		header.push_back(cell);
	bool has_lle = header.size() == 3 && header[2] == "lle";
	if (!(header.size() == 2 || has_lle) || header[0] != "dataset" || header[1] != "omega")
		throw ParseError(path + ": expected header 'dataset,omega[,lle]'");

	std::vector<std::pair<std::string, double>> rows;
	std::set<std::string> seen;
	std::size_t lineno = 1;
	while (std::getline(in, line)) {
		++lineno;
		if (!line.empty() && line.back() == '\r')
			line.pop_back();
		if (line.empty())
			continue;
		std::stringstream ss(line);
		std::vector<std::string> cells;
		while (std::getline(ss, cell, ','))
			cells.push_back(cell);
		if (cells.size() != header.size())
			throw ParseError(path + ": row " + std::to_string(lineno) +
			                 " has the wrong cell count");
		if (!seen.insert(cells[0]).second)
			throw ParseError(path + ": duplicate dataset key '" + cells[0] + "'");
		try {
			rows.emplace_back(cells[0], std::stod(cells[1]));
		} catch (const std::exception&) {
			throw ParseError(path + ": row " + std::to_string(lineno) +
			                 ": bad omega value '" + cells[1] + "'");
		}
	}
	return rows;
}

StatsRun run_stats(const std::string& metrics_csv, const std::string& omega_csv,
                   const StatsParams& p, const std::string& out_prefix) {
	std::vector<MetricRow> rows = read_metric_csv(metrics_csv);
	if (rows.empty())
		throw InvalidInput(metrics_csv + ": no metric rows");
	auto omega_rows = read_omega_csv(omega_csv);
	std::map<std::string, double> omega_by_dataset(omega_rows.begin(), omega_rows.end());

	std::set<std::string> unmatched;
	for (const auto& r : rows)
		if (omega_by_dataset.find(r.dataset) == omega_by_dataset.end())
			unmatched.insert(r.dataset);
	if (!unmatched.empty()) {
		std::string list;
		for (const auto& name : unmatched)
			list += (list.empty() ? "" : ", ") + name;
		throw InvalidInput("datasets missing from the omega table: " + list);
	}

	XYSample points;
	points.reserve(rows.size());
	for (const auto& r : rows)
		points.push_back({omega_by_dataset[r.dataset], r.smape});

	StatsRun run;
	run.n = points.size();
	run.correlations = correlation_summary(points, p.confidence);

	if (points.size() >= p.bins) {
		run.bins = quantile_bins(points, p.bins);
	} else {
		run.warnings.push_back("too few points for " + std::to_string(p.bins) +
		                       " quantile bins; skipped");
	}
	if (points.size() >= 5) {
		run.trend = bootstrap_band(points, p.frac, p.n_boot, p.seed);
	} else {
		run.warnings.push_back("too few points for a LOWESS trend band; skipped");
	}

	if (p.delta) {
		DeltaSummary ds;
		ds.model_a = p.delta->first;
		ds.model_b = p.delta->second;
		std::map<std::string, double> a_rows, b_rows;
		for (const auto& r : rows) {
			if (r.model == ds.model_a)
				a_rows[r.dataset] = r.smape;
			if (r.model == ds.model_b)
				b_rows[r.dataset] = r.smape;
		}
		if (a_rows.empty() || b_rows.empty())
			throw InvalidInput("delta mode: model '" +
			                   (a_rows.empty() ? ds.model_a : ds.model_b) +
			                   "' has no rows in " + metrics_csv);
		XYSample delta_points;
		for (const auto& [dataset, a] : a_rows) {
			auto itb = b_rows.find(dataset);
			if (itb == b_rows.end()) {
				ds.skipped.emplace_back(dataset, "no row for model " + ds.model_b);
				continue;
			}
			try {
				double delta = relative_error_delta(a, itb->second);
				ds.records.push_back(
				    {ds.model_a, ds.model_b, dataset, omega_by_dataset[dataset], delta});
				delta_points.push_back({omega_by_dataset[dataset], delta});
			} catch (const UndefinedDelta& e) {
				ds.skipped.emplace_back(dataset, e.what());
			}
		}
		if (delta_points.size() < 2)
			throw TooFewPoints("delta mode: fewer than 2 joined datasets");
		ds.theil_sen = theil_sen_slope(delta_points);
		run.delta = std::move(ds);
	}

	run.json_path = out_prefix + ".stats.json";
	json j{{"metrics_file", metrics_csv},
	       {"omega_file", omega_csv},
	       {"n", run.n},
	       {"correlations", corr_json(run.correlations)},
	       {"warnings", run.warnings}};
	if (run.bins) {
		json bins = json::array();
		for (const auto& b : run.bins->bins)
			bins.push_back(json{{"mean_x", b.mean_x},
			                    {"mean_y", b.mean_y},
			                    {"se_y", b.se_y},
			                    {"count", b.count},
			                    {"singleton", b.singleton}});
		j["bins"] = json{{"edges", run.bins->edges},
		                 {"bins", bins},
		                 {"unequal_counts", run.bins->unequal_counts}};
	} else {
		j["bins"] = nullptr;
	}
	if (run.trend) {
		j["trend_band"] = json{{"frac", run.trend->frac},
		                       {"n_boot", run.trend->n_boot},
		                       {"seed", run.trend->seed},
		                       {"grid", run.trend->grid},
		                       {"fit", run.trend->fit},
		                       {"band_low", run.trend->band_low},
		                       {"band_high", run.trend->band_high},
		                       {"excluded", run.trend->excluded}};
		run.trend_csv_path = out_prefix + ".trend.csv";
		auto csv = open_out(run.trend_csv_path);
		csv << "grid,fit,band_low,band_high\n";
		for (std::size_t i = 0; i < run.trend->grid.size(); ++i)
			csv << run.trend->grid[i] << ',' << run.trend->fit[i] << ','
			    << run.trend->band_low[i] << ',' << run.trend->band_high[i] << "\n";
	} else {
		j["trend_band"] = nullptr;
	}
	if (run.delta) {
		json skipped = json::array();
		for (const auto& [dataset, reason] : run.delta->skipped)
			skipped.push_back({{"dataset", dataset}, {"reason", reason}});
		j["delta"] = json{{"model_a", run.delta->model_a},
		                  {"model_b", run.delta->model_b},
		                  {"n", run.delta->records.size()},
		                  {"theil_sen_slope", run.delta->theil_sen},
		                  {"skipped", skipped}};
		run.delta_csv_path = out_prefix + ".delta.csv";
		auto csv = open_out(run.delta_csv_path);
		csv << "model_a,model_b,dataset,omega,delta_pct\n";
		for (const auto& rec : run.delta->records)
			csv << rec.model_a << ',' << rec.model_b << ',' << rec.dataset << ','
			    << rec.omega << ',' << rec.delta_pct << "\n";
	}
	write_json(run.json_path, j);
	return run;
}

RecommendRun run_recommend(const std::string& input, const IoOptions& io,
                           const RecommendParams& p, const std::string& out_prefix) {
	RecommendRun run;
	Dataset d = load_and_prepare(input, io, run.preprocess_warnings);
	run.rec = recommend(d, p.policy, p.spectral);
	if (p.with_lle)
		run.rec.lle = lle_dataset(d, p.lle).mean_lambda;

	run.json_path = out_prefix + ".recommendation.json";
	json warnings = json::array();
	for (auto w : run.rec.warnings)
		warnings.push_back(to_string(w));
	json families = json::array();
	for (const auto& f : run.rec.families)
		families.push_back({{"family", to_string(f.family)}, {"rationale", f.rationale}});
	json j{{"dataset", run.rec.dataset},
	       {"omega", run.rec.omega},
	       {"regime", to_string(run.rec.regime)},
	       {"warnings", warnings},
	       {"families", families},
	       {"confident", run.rec.confident}};
	if (run.rec.lle)
		j["lle"] = *run.rec.lle;
	write_json(run.json_path, j);
	return run;
}

std::vector<double> parse_targets(const std::string& text) {
	std::vector<double> out;
	if (text.find(':') != std::string::npos) {
		double start = 0, stop = 0, step = 0;
		char c1 = 0, c2 = 0;
		std::istringstream ss(text);
		if (!(ss >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' ||
		    !ss.eof() || step <= 0)
			throw std::invalid_argument("targets range must look like start:stop:step");
		for (std::size_t i = 0;; ++i) {
			double v = start + static_cast<double>(i) * step;
			if (v > stop + step * 1e-9)
				break;
			out.push_back(v);
		}
	} else {
		std::istringstream ss(text);
		std::string cell;
		while (std::getline(ss, cell, ',')) {
			try {
				std::size_t pos = 0;
				double v = std::stod(cell, &pos);
				if (pos != cell.size())
					throw std::invalid_argument("junk");
				out.push_back(v);
			} catch (const std::exception&) {
				throw std::invalid_argument("bad target value '" + cell + "'");
			}
		}
	}
	if (out.empty())
		throw std::invalid_argument("no target levels given");
	return out;
}

} // namespace specpred
