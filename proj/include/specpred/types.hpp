#pragma once

#include <string>
#include <vector>

#include "specpred/errors.hpp"

namespace specpred {

// A univariate series. Missing samples are stored as NaN until preprocessing
// resolves them; every analysis entry point requires finite values.
struct TimeSeries {
	std::string name;
	std::vector<double> values;
	double dt = 1.0; // time between samples, > 0
};

// Named collection of covariate series. Series names are unique.
struct Dataset {
	std::string name;
	std::vector<TimeSeries> series;
};

void validate_series(const TimeSeries& s);
void validate_dataset(const Dataset& d);

// Throws InvalidInput if the series contains non-finite samples.
void require_finite(const TimeSeries& s);

} // namespace specpred
