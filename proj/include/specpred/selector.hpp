#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specpred/forecast_metrics.hpp"
#include "specpred/spectral.hpp"
#include "specpred/types.hpp"

namespace specpred {

enum class Regime { high, mid, low };

enum class ReliabilityWarning {
	short_series,
	nonstationary,
	exogenous_flagged,
	degenerate_series_present,
};

std::string to_string(Regime r);
std::string to_string(ReliabilityWarning w);

struct SelectorPolicy {
	double high_threshold = 0.5;
	double low_threshold = 0.4;
	std::size_t min_length = 1000;     // warn when T <= this
	double stationarity_drift = 0.10;  // split-half omega drift tolerance
	bool exogenous_dominated = false;  // user-supplied domain knowledge
};

struct FamilySuggestion {
	ModelFamily family;
	std::string rationale;
};

struct Recommendation {
	std::string dataset;
	Regime regime = Regime::mid;
	double omega = 0.0;
	std::optional<double> lle; // filled by callers that also ran the LLE pass
	std::vector<ReliabilityWarning> warnings;
	std::vector<FamilySuggestion> families;
	bool confident = false; // true exactly when warnings is empty
};

/// short_series / nonstationary / exogenous_flagged / degenerate_series_present
/// checks; warnings, never failures.
std::vector<ReliabilityWarning> reliability_check(const Dataset& d, const SelectorPolicy& p,
                                                  const SpectralConfig& spectral_cfg = {});

/// high when omega > high_threshold, low when omega < low_threshold, else mid
/// (both boundary values land in mid).
Regime classify_regime(double omega_value, const SelectorPolicy& p);

/// omega_dataset + classify_regime + reliability_check, with the family list
/// for the regime.
Recommendation recommend(const Dataset& d, const SelectorPolicy& p = {},
                         const SpectralConfig& spectral_cfg = {});

} // namespace specpred
