#pragma once

#include <cstddef>
#include <vector>

namespace specpred {

struct ForecastTask {
	std::vector<double> context;
	std::size_t horizon = 1;
	std::size_t season_length = 1; // seasonal naive only
};

/// Every forecast value equals the last context value.
std::vector<double> naive_forecast(const ForecastTask& t);

/// Forecast at step h (1-based) repeats the context value at position
/// T - season_length + ((h-1) mod season_length).
std::vector<double> seasonal_naive_forecast(const ForecastTask& t);

} // namespace specpred
