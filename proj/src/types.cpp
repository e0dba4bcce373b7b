#include "specpred/types.hpp"

#include <cmath>
#include <set>

#include "specpred/errors.hpp"

namespace specpred {

void validate_series(const TimeSeries& s) {
	if (s.values.empty())
		throw InvalidInput("series '" + s.name + "' has no samples");
	if (!(s.dt > 0.0) || !std::isfinite(s.dt))
		throw InvalidInput("series '" + s.name + "' has non-positive sample interval");
}

void validate_dataset(const Dataset& d) {
	if (d.series.empty())
		throw InvalidInput("dataset '" + d.name + "' has no series");
	std::set<std::string> seen;
	for (const auto& s : d.series) {
		validate_series(s);
		if (!seen.insert(s.name).second)
			throw InvalidInput("dataset '" + d.name + "' has duplicate series name '" + s.name + "'");
	}
}

void require_finite(const TimeSeries& s) {
	for (double v : s.values)
		if (!std::isfinite(v))
			throw InvalidInput("series '" + s.name + "' contains non-finite samples after preprocessing");
}

} // namespace specpred
