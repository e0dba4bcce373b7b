#include "specpred/selector.hpp"

#include <cmath>

#include "specpred/errors.hpp"

namespace specpred {

namespace {

void validate_policy(const SelectorPolicy& p) {
	if (!(p.low_threshold > 0.0 && p.low_threshold <= p.high_threshold &&
	      p.high_threshold < 1.0))
		throw InvalidInput("selector thresholds need 0 < low <= high < 1");
	if (!(p.stationarity_drift > 0.0))
		throw InvalidInput("stationarity drift must be positive");
}

// Split-half omega drift as a cheap stationarity proxy. Halves that are too
// short or degenerate contribute no evidence.
bool drifts(const TimeSeries& s, double threshold, const SpectralConfig& cfg) {
	const std::size_t t = s.values.size();
	const std::size_t h = t / 2;
	if (h < 4)
		return false;
	TimeSeries first{s.name + ":first", {s.values.begin(), s.values.begin() + static_cast<std::ptrdiff_t>(h)}, s.dt};
	TimeSeries second{s.name + ":second", {s.values.end() - static_cast<std::ptrdiff_t>(h), s.values.end()}, s.dt};
	try {
		double a = omega(first, cfg).omega;
		double b = omega(second, cfg).omega;
		return std::abs(a - b) > threshold;
	} catch (const Error&) {
		return false;
	}
}

std::vector<FamilySuggestion> families_for(Regime regime) {
	switch (regime) {
	case Regime::high:
		return {
		    {ModelFamily::zero_shot,
		     "high-omega regime: zero-shot foundation models (e.g. Moirai, Chronos) "
		     "hold a systematic accuracy advantage here"},
		    {ModelFamily::pretrained,
		     "re-pretrained foundation models are a second option, though their "
		     "omega-dependent advantage is weaker"},
		};
	case Regime::low:
		return {
		    {ModelFamily::statistical,
		     "low-omega regime: lightweight statistical models (e.g. ARIMA, seasonal "
		     "naive) match larger models at a fraction of the cost"},
		    {ModelFamily::deep_learning,
		     "task-trained deep models (e.g. DLinear) are competitive; zero-shot "
		     "models show no clear advantage on low-omega data"},
		};
	case Regime::mid:
		return {
		    {ModelFamily::statistical,
		     "mid-omega regime: no family dominates; statistical baselines are the "
		     "cheapest starting point"},
		    {ModelFamily::deep_learning,
		     "task-trained deep models are worth validating when training budget "
		     "allows"},
		    {ModelFamily::zero_shot,
		     "zero-shot models may still win; weigh inference cost and latency "
		     "against the uncertain gain"},
		};
	}
	return {};
}

} // namespace

std::string to_string(Regime r) {
	switch (r) {
	case Regime::high:
		return "high";
	case Regime::mid:
		return "mid";
	case Regime::low:
		return "low";
	}
	return "?";
}

std::string to_string(ReliabilityWarning w) {
	switch (w) {
	case ReliabilityWarning::short_series:
		return "short_series";
	case ReliabilityWarning::nonstationary:
		return "nonstationary";
	case ReliabilityWarning::exogenous_flagged:
		return "exogenous_flagged";
	case ReliabilityWarning::degenerate_series_present:
		return "degenerate_series_present";
	}
	return "?";
}

std::vector<ReliabilityWarning> reliability_check(const Dataset& d, const SelectorPolicy& p,
                                                  const SpectralConfig& spectral_cfg) {
	validate_policy(p);
	validate_dataset(d);
	std::vector<ReliabilityWarning> warnings;

	bool any_short = false;
	for (const auto& s : d.series)
		if (s.values.size() <= p.min_length)
			any_short = true;
	if (any_short)
		warnings.push_back(ReliabilityWarning::short_series);

	bool any_drift = false;
	for (const auto& s : d.series)
		if (drifts(s, p.stationarity_drift, spectral_cfg))
			any_drift = true;
	if (any_drift)
		warnings.push_back(ReliabilityWarning::nonstationary);

	if (p.exogenous_dominated)
		warnings.push_back(ReliabilityWarning::exogenous_flagged);

	bool any_skipped = false;
	for (const auto& s : d.series) {
		try {
			omega(s, spectral_cfg);
		} catch (const Error&) {
			any_skipped = true;
		}
	}
	if (any_skipped)
		warnings.push_back(ReliabilityWarning::degenerate_series_present);

	return warnings;
}

Regime classify_regime(double omega_value, const SelectorPolicy& p) {
	validate_policy(p);
	if (!(omega_value >= 0.0 && omega_value <= 1.0))
		throw InvalidInput("omega outside [0,1]");
	if (omega_value > p.high_threshold)
		return Regime::high;
	if (omega_value < p.low_threshold)
		return Regime::low;
	return Regime::mid;
}

Recommendation recommend(const Dataset& d, const SelectorPolicy& p,
                         const SpectralConfig& spectral_cfg) {
	validate_policy(p);
	DatasetOmega dso = omega_dataset(d, spectral_cfg); // AllSeriesDegenerate propagates

	Recommendation rec;
	rec.dataset = d.name;
	rec.omega = dso.mean_omega;
	rec.regime = classify_regime(dso.mean_omega, p);
	rec.warnings = reliability_check(d, p, spectral_cfg);
	rec.families = families_for(rec.regime);
	rec.confident = rec.warnings.empty();
	return rec;
}

} // namespace specpred
