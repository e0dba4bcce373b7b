#include <doctest.h>

#include <cmath>

#include "specpred/errors.hpp"
#include "specpred/selector.hpp"
#include "specpred/synthgen.hpp"

#include "support/oracles.hpp"
#include "support/testutil.hpp"

using namespace specpred;
using testutil::make_dataset;
using testutil::make_series;

namespace {

// first half clean tone, second half pure noise: a textbook regime change
std::vector<double> sine_then_noise(std::size_t n, std::uint64_t seed) {
	auto v = oracle::sine(n, 16.0);
	auto g = oracle::gaussian(n, seed);
	for (std::size_t i = n / 2; i < n; ++i)
		v[i] = g[i];
	return v;
}

} // namespace

TEST_SUITE("selector") {

TEST_CASE("regime boundaries put both thresholds in mid") {
	SelectorPolicy p;
	CHECK(classify_regime(0.66, p) == Regime::high);
	CHECK(classify_regime(0.50, p) == Regime::mid);
	CHECK(classify_regime(0.40, p) == Regime::mid);
	CHECK(classify_regime(0.45, p) == Regime::mid);
	CHECK(classify_regime(0.30, p) == Regime::low);
	CHECK(classify_regime(0.0, p) == Regime::low);
	CHECK(classify_regime(1.0, p) == Regime::high);
}

TEST_CASE("regime is monotone in omega") {
	SelectorPolicy p;
	int last = 0; // low=0, mid=1, high=2
	for (int i = 0; i <= 100; ++i) {
		Regime r = classify_regime(static_cast<double>(i) / 100.0, p);
		int level = r == Regime::low ? 0 : r == Regime::mid ? 1 : 2;
		CHECK(level >= last);
		last = level;
	}
}

TEST_CASE("classification validates inputs") {
	SelectorPolicy p;
	CHECK_THROWS_AS(classify_regime(1.2, p), InvalidInput);
	CHECK_THROWS_AS(classify_regime(-0.1, p), InvalidInput);
	SelectorPolicy bad;
	bad.low_threshold = 0.7; // above high
	CHECK_THROWS_AS(classify_regime(0.5, bad), InvalidInput);
	bad = SelectorPolicy{};
	bad.stationarity_drift = 0.0;
	CHECK_THROWS_AS(classify_regime(0.5, bad), InvalidInput);
}

TEST_CASE("a long clean dataset raises no warnings") {
	Dataset d = make_dataset("clean", {make_series("s", oracle::sine(4096, 16.0))});
	auto w = reliability_check(d, SelectorPolicy{});
	CHECK(w.empty());
}

TEST_CASE("short series warning fires at T <= 1000") {
	SelectorPolicy p;
	Dataset d = make_dataset("short", {make_series("s", oracle::sine(500, 16.0))});
	auto w = reliability_check(d, p);
	REQUIRE(w.size() == 1);
	CHECK(w[0] == ReliabilityWarning::short_series);
	CHECK(to_string(w[0]) == "short_series");

	// exactly at the limit still warns, one past it does not
	auto at_limit = reliability_check(
	    make_dataset("d", {make_series("s", oracle::sine(1000, 16.0))}), p);
	CHECK(at_limit.size() == 1);
	auto past_limit = reliability_check(
	    make_dataset("d", {make_series("s", oracle::sine(1001, 16.0))}), p);
	CHECK(past_limit.empty());
}

TEST_CASE("split-half omega drift flags nonstationarity") {
	Dataset d = make_dataset("drift", {make_series("s", sine_then_noise(4096, 5))});
	auto w = reliability_check(d, SelectorPolicy{});
	REQUIRE(w.size() == 1);
	CHECK(w[0] == ReliabilityWarning::nonstationary);

	// a stationary tone of the same length stays quiet
	Dataset ok = make_dataset("ok", {make_series("s", oracle::sine(4096, 16.0))});
	CHECK(reliability_check(ok, SelectorPolicy{}).empty());
}

TEST_CASE("exogenous domain knowledge is a pass-through flag") {
	SelectorPolicy p;
	p.exogenous_dominated = true;
	Dataset d = make_dataset("exo", {make_series("s", oracle::sine(4096, 16.0))});
	auto w = reliability_check(d, p);
	REQUIRE(w.size() == 1);
	CHECK(w[0] == ReliabilityWarning::exogenous_flagged);
}

TEST_CASE("degenerate series in the dataset are reported") {
	Dataset d = make_dataset("mix", {make_series("s", oracle::sine(4096, 16.0)),
	                                 make_series("flat", std::vector<double>(4096, 3.0))});
	auto w = reliability_check(d, SelectorPolicy{});
	REQUIRE(w.size() == 1);
	CHECK(w[0] == ReliabilityWarning::degenerate_series_present);
}

TEST_CASE("warnings accumulate in a fixed order") {
	SelectorPolicy p;
	p.exogenous_dominated = true;
	Dataset d = make_dataset("messy", {make_series("s", sine_then_noise(800, 9)),
	                                   make_series("flat", std::vector<double>(800, 1.0))});
	auto w = reliability_check(d, p);
	REQUIRE(w.size() == 4);
	CHECK(w[0] == ReliabilityWarning::short_series);
	CHECK(w[1] == ReliabilityWarning::nonstationary);
	CHECK(w[2] == ReliabilityWarning::exogenous_flagged);
	CHECK(w[3] == ReliabilityWarning::degenerate_series_present);
}

TEST_CASE("recommend: clean tone lands in high with zero-shot first") {
	Dataset d = make_dataset("tone", {make_series("s", oracle::sine(4096, 16.0))});
	auto rec = recommend(d);
	CHECK(rec.dataset == "tone");
	CHECK(rec.regime == Regime::high);
	CHECK(rec.omega > 0.5);
	CHECK(rec.warnings.empty());
	CHECK(rec.confident);
	REQUIRE(!rec.families.empty());
	CHECK(rec.families[0].family == ModelFamily::zero_shot);
	CHECK(!rec.families[0].rationale.empty());
	CHECK(!rec.lle.has_value()); // recommend alone never fills the chaos field
}

TEST_CASE("recommend: noise lands in low with statistical first") {
	Dataset d = make_dataset("noise", {make_series("s", oracle::gaussian(4096, 3))});
	auto rec = recommend(d);
	CHECK(rec.regime == Regime::low);
	CHECK(rec.omega < 0.4);
	REQUIRE(rec.families.size() == 2);
	CHECK(rec.families[0].family == ModelFamily::statistical);
	CHECK(rec.families[1].family == ModelFamily::deep_learning);
}

TEST_CASE("recommend: mid regime offers three options") {
	// calibrate a mid-omega series rather than guessing one
	SynthSpec spec;
	spec.target_omega = 0.45;
	spec.seed = 12;
	auto synth = generate_with_target_omega(spec);
	synth.series.name = "s";
	Dataset d = make_dataset("mid", {synth.series});
	auto rec = recommend(d);
	CHECK(rec.regime == Regime::mid);
	REQUIRE(rec.families.size() == 3);
	CHECK(rec.families[0].family == ModelFamily::statistical);
	CHECK(rec.families[1].family == ModelFamily::deep_learning);
	CHECK(rec.families[2].family == ModelFamily::zero_shot);
	CHECK(rec.confident == rec.warnings.empty());
}

TEST_CASE("recommendation is invariant under affine rescaling") {
	auto v = oracle::noisy_sine(2048, 32.0, 0.5, 8);
	auto scaled = v;
	for (double& x : scaled)
		x = -6.0 * x + 40.0;
	auto a = recommend(make_dataset("d", {make_series("s", v)}));
	auto b = recommend(make_dataset("d", {make_series("s", scaled)}));
	CHECK(a.regime == b.regime);
	CHECK(std::abs(a.omega - b.omega) <= 1e-9);
	CHECK(a.warnings == b.warnings);
	REQUIRE(a.families.size() == b.families.size());
	for (std::size_t i = 0; i < a.families.size(); ++i)
		CHECK(a.families[i].family == b.families[i].family);
}

TEST_CASE("short input degrades confidence, not the verdict") {
	Dataset d = make_dataset("short", {make_series("s", oracle::sine(800, 16.0))});
	auto rec = recommend(d);
	CHECK(rec.regime == Regime::high);
	REQUIRE(rec.warnings.size() == 1);
	CHECK(rec.warnings[0] == ReliabilityWarning::short_series);
	CHECK(!rec.confident);
}

TEST_CASE("an all-degenerate dataset fails loudly") {
	Dataset d = make_dataset("flat", {make_series("a", std::vector<double>(2048, 1.0))});
	CHECK_THROWS_AS(recommend(d), AllSeriesDegenerate);
}

TEST_CASE("regime names") {
	CHECK(to_string(Regime::high) == "high");
	CHECK(to_string(Regime::mid) == "mid");
	CHECK(to_string(Regime::low) == "low");
}

} // TEST_SUITE
