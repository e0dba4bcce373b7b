#include "specpred/baselines.hpp"

#include <string>

#include "specpred/errors.hpp"

namespace specpred {

namespace {

void validate_task(const ForecastTask& t) {
	if (t.context.empty())
		throw InvalidInput("forecast task: empty context");
	if (t.horizon < 1)
		throw InvalidInput("forecast task: horizon must be >= 1");
}

} // namespace

std::vector<double> naive_forecast(const ForecastTask& t) {
	validate_task(t);
	return std::vector<double>(t.horizon, t.context.back());
}

std::vector<double> seasonal_naive_forecast(const ForecastTask& t) {
	validate_task(t);
	if (t.season_length < 1)
		throw InvalidInput("forecast task: season_length must be >= 1");
	if (t.context.size() < t.season_length)
		throw InvalidInput("forecast task: context length " +
		                   std::to_string(t.context.size()) +
		                   " is shorter than season_length " +
		                   std::to_string(t.season_length));
	std::vector<double> out(t.horizon);
	const std::size_t base = t.context.size() - t.season_length;
	for (std::size_t h = 1; h <= t.horizon; ++h)
		out[h - 1] = t.context[base + (h - 1) % t.season_length];
	return out;
}

} // namespace specpred
