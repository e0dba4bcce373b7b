#include "specpred/forecast_metrics.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "specpred/errors.hpp"

namespace specpred {

namespace {

void validate_pair(const std::vector<double>& target, const std::vector<double>& forecast) {
	if (target.empty() || target.size() != forecast.size())
		throw InvalidInput("forecast pair needs equal non-zero lengths, got " +
		                   std::to_string(target.size()) + " and " +
		                   std::to_string(forecast.size()));
	for (double v : target)
		if (!std::isfinite(v))
			throw InvalidInput("forecast pair: non-finite target value");
	for (double v : forecast)
		if (!std::isfinite(v))
			throw InvalidInput("forecast pair: non-finite forecast value");
}

std::string trim(const std::string& s) {
	std::size_t a = s.find_first_not_of(" \t\r");
	if (a == std::string::npos)
		return "";
	std::size_t b = s.find_last_not_of(" \t\r");
	return s.substr(a, b - a + 1);
}

} // namespace

ModelFamily parse_model_family(const std::string& name) {
	if (name == "statistical")
		return ModelFamily::statistical;
	if (name == "deep_learning")
		return ModelFamily::deep_learning;
	if (name == "pretrained")
		return ModelFamily::pretrained;
	if (name == "zero_shot")
		return ModelFamily::zero_shot;
	if (name == "fine_tuned")
		return ModelFamily::fine_tuned;
	if (name == "agentic")
		return ModelFamily::agentic;
	throw ParseError("unknown model family '" + name + "'");
}

std::string to_string(ModelFamily f) {
	switch (f) {
	case ModelFamily::statistical:
		return "statistical";
	case ModelFamily::deep_learning:
		return "deep_learning";
	case ModelFamily::pretrained:
		return "pretrained";
	case ModelFamily::zero_shot:
		return "zero_shot";
	case ModelFamily::fine_tuned:
		return "fine_tuned";
	case ModelFamily::agentic:
		return "agentic";
	}
	return "?";
}

double smape(const std::vector<double>& target, const std::vector<double>& forecast) {
	validate_pair(target, forecast);
	double sum = 0.0;
	for (std::size_t t = 0; t < target.size(); ++t) {
		double denom = std::abs(forecast[t]) + std::abs(target[t]);
		if (denom > 0.0)
			sum += 2.0 * std::abs(forecast[t] - target[t]) / denom;
	}
	return sum / static_cast<double>(target.size());
}

double mse(const std::vector<double>& target, const std::vector<double>& forecast) {
	validate_pair(target, forecast);
	double sum = 0.0;
	for (std::size_t t = 0; t < target.size(); ++t) {
		double e = forecast[t] - target[t];
		sum += e * e;
	}
	return sum / static_cast<double>(target.size());
}

double relative_error_delta(double smape_a, double smape_b) {
	if (smape_a == 0.0)
		throw UndefinedDelta("relative delta undefined: sMAPE of model A is zero");
	return 100.0 * (smape_a - smape_b) / smape_a;
}

std::vector<MetricRow> read_metric_csv(const std::string& path) {
	std::ifstream in(path);
	if (!in)
		throw ParseError("cannot open '" + path + "'");
	std::string line;
	if (!std::getline(in, line))
		throw ParseError(path + ": empty file");
	if (!line.empty() && line.back() == '\r')
		line.pop_back();

	std::vector<std::string> header;
	{
		std::stringstream ss(line);
		std::string cell;
		while (std::getline(ss, cell, ','))
			header.push_back(trim(cell));
	}
	bool has_mse = header.size() == 5 && header[4] == "mse";
	if (!(header.size() == 4 || has_mse) || header[0] != "model" || header[1] != "family" ||
	    header[2] != "dataset" || header[3] != "smape")
		throw ParseError(path + ": expected header 'model,family,dataset,smape[,mse]'");

	std::vector<MetricRow> rows;
	std::size_t lineno = 1;
	while (std::getline(in, line)) {
		++lineno;
		if (!line.empty() && line.back() == '\r')
			line.pop_back();
		if (trim(line).empty())
			continue;
		std::vector<std::string> cells;
		std::stringstream ss(line);
		std::string cell;
		while (std::getline(ss, cell, ','))
			cells.push_back(trim(cell));
		// a row ending in ',' is an empty final cell (absent mse)
		if (!line.empty() && line.back() == ',')
			cells.emplace_back();
		if (cells.size() != header.size())
			throw ParseError(path + ": row " + std::to_string(lineno) + " has " +
			                 std::to_string(cells.size()) + " cells, expected " +
			                 std::to_string(header.size()));
		MetricRow r;
		r.model = cells[0];
		r.family = parse_model_family(cells[1]);
		r.dataset = cells[2];
		try {
			r.smape = std::stod(cells[3]);
			if (has_mse && !cells[4].empty())
				r.mse = std::stod(cells[4]);
		} catch (const std::exception&) {
			throw ParseError(path + ": row " + std::to_string(lineno) + ": bad numeric cell");
		}
		if (!(r.smape >= 0.0 && r.smape <= 2.0))
			throw ParseError(path + ": row " + std::to_string(lineno) + ": smape " +
			                 cells[3] + " outside [0,2]");
		rows.push_back(std::move(r));
	}
	return rows;
}

void write_metric_csv(const std::string& path, const std::vector<MetricRow>& rows) {
	std::ofstream out(path);
	if (!out)
		throw Error("cannot write '" + path + "'");
	bool any_mse = false;
	for (const auto& r : rows)
		if (r.mse)
			any_mse = true;
	out << "model,family,dataset,smape" << (any_mse ? ",mse" : "") << "\n";
	out.precision(17);
	for (const auto& r : rows) {
		out << r.model << ',' << to_string(r.family) << ',' << r.dataset << ',' << r.smape;
		if (any_mse) {
			out << ',';
			if (r.mse)
				out << *r.mse;
		}
		out << "\n";
	}
}

} // namespace specpred
