#pragma once

#include <optional>
#include <string>
#include <vector>

namespace specpred {

enum class ModelFamily { statistical, deep_learning, pretrained, zero_shot, fine_tuned, agentic };

ModelFamily parse_model_family(const std::string& name);
std::string to_string(ModelFamily f);

/// Symmetric MAPE on the [0,2] scale: mean of 2|f-y| / (|f|+|y|).
/// A 0/0 term (both values zero) contributes 0 — the forecast is exactly right.
double smape(const std::vector<double>& target, const std::vector<double>& forecast);

/// Plain mean of squared errors.
double mse(const std::vector<double>& target, const std::vector<double>& forecast);

/// Delta_{A->B} = 100*(a - b)/a, in percent; negative means A better.
/// Throws UndefinedDelta when a == 0.
double relative_error_delta(double smape_a, double smape_b);

struct MetricRow {
	std::string model;
	ModelFamily family = ModelFamily::statistical;
	std::string dataset;
	double smape = 0.0;
	std::optional<double> mse;
};

struct DeltaRecord {
	std::string model_a;
	std::string model_b;
	std::string dataset;
	double omega = 0.0;
	double delta_pct = 0.0;
};

/// CSV with header `model,family,dataset,smape[,mse]`.
std::vector<MetricRow> read_metric_csv(const std::string& path);
void write_metric_csv(const std::string& path, const std::vector<MetricRow>& rows);

} // namespace specpred
