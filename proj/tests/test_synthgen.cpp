#include <doctest.h>

#include <cmath>

#include "specpred/errors.hpp"
#include "specpred/rng.hpp"
#include "specpred/spectral.hpp"
#include "specpred/synthgen.hpp"

#include "support/oracles.hpp"

using namespace specpred;

TEST_SUITE("synthgen") {

TEST_CASE("a point-mass spectrum synthesizes a clean tone") {
	const std::size_t length = 1024, k = 512;
	std::vector<double> shape(k, 0.0);
	shape[63] = 1.0; // bin 64
	TimeSeries s = synth_from_spectrum(shape, length, 42);
	REQUIRE(s.values.size() == length);

	auto r = omega(s, SpectralConfig{Taper::none, 1e-12});
	CHECK(r.peak_bins[0] == 64);
	CHECK(r.omega > 0.999);

	// residual after projecting onto the bin-64 tone pair is numerically zero
	double a = 0, b = 0;
	for (std::size_t t = 0; t < length; ++t) {
		double ang = 2.0 * M_PI * 64.0 * static_cast<double>(t) / 1024.0;
		a += s.values[t] * std::cos(ang);
		b += s.values[t] * std::sin(ang);
	}
	a *= 2.0 / length;
	b *= 2.0 / length;
	double res = 0;
	for (std::size_t t = 0; t < length; ++t) {
		double ang = 2.0 * M_PI * 64.0 * static_cast<double>(t) / 1024.0;
		double e = s.values[t] - a * std::cos(ang) - b * std::sin(ang);
		res += e * e;
	}
	CHECK(res / length < 1e-18);
}

TEST_CASE("a uniform spectrum synthesizes noise") {
	const std::size_t length = 4096, k = 2048;
	std::vector<double> shape(k, 1.0 / static_cast<double>(k));
	TimeSeries s = synth_from_spectrum(shape, length, 7);
	CHECK(omega(s).omega < 0.1);
}

TEST_CASE("synthesis is standardized and deterministic") {
	const std::size_t length = 512, k = 256;
	std::vector<double> shape(k, 0.5 / static_cast<double>(k));
	shape[31] += 0.5;
	TimeSeries a = synth_from_spectrum(shape, length, 99);
	TimeSeries b = synth_from_spectrum(shape, length, 99);
	CHECK(a.values == b.values);

	double mean = 0;
	for (double v : a.values)
		mean += v;
	mean /= static_cast<double>(length);
	double var = 0;
	for (double v : a.values)
		var += (v - mean) * (v - mean);
	var /= static_cast<double>(length);
	CHECK(std::abs(mean) < 1e-9);
	CHECK(std::abs(var - 1.0) < 1e-6);

	TimeSeries c = synth_from_spectrum(shape, length, 100);
	CHECK(a.values != c.values); // a different seed moves the phases
}

TEST_CASE("shape validation") {
	CHECK_THROWS_AS(synth_from_spectrum(std::vector<double>(100, 0.01), 512, 1), InvalidShape);
	std::vector<double> neg(256, 1.0 / 256.0);
	neg[3] = -neg[3];
	CHECK_THROWS_AS(synth_from_spectrum(neg, 512, 1), InvalidShape);
	std::vector<double> off(256, 1.0 / 256.0);
	off[0] += 0.5;
	CHECK_THROWS_AS(synth_from_spectrum(off, 512, 1), InvalidShape);
}

TEST_CASE("spec validation") {
	SynthSpec s;
	s.target_omega = 0.0;
	CHECK_THROWS_AS(generate_with_target_omega(s), InvalidInput);
	s = SynthSpec{};
	s.target_omega = 1.0;
	CHECK_THROWS_AS(generate_with_target_omega(s), InvalidInput);
	s = SynthSpec{};
	s.length = 128;
	CHECK_THROWS_AS(generate_with_target_omega(s), InvalidInput);
	s = SynthSpec{};
	s.tolerance = 0.0;
	CHECK_THROWS_AS(generate_with_target_omega(s), InvalidInput);
}

TEST_CASE("measured omega is monotone in the mixing weight") {
	// the bisection's soundness condition, checked on an explicit grid
	const std::size_t length = 1024, k = 512;
	const std::size_t bin = k / 8;
	double prev = -1.0;
	for (int g = 0; g <= 20; ++g) {
		double alpha = static_cast<double>(g) / 20.0;
		std::vector<double> shape(k, (1.0 - alpha) / static_cast<double>(k));
		shape[bin - 1] += alpha;
		double w = omega(synth_from_spectrum(shape, length, 11)).omega;
		CHECK(w >= prev - 1e-3);
		prev = w;
	}
}

TEST_CASE("calibration hits the target and re-measures to the same omega") {
	SynthSpec spec;
	spec.target_omega = 0.5;
	spec.length = 1024;
	spec.seed = 7;
	SynthResult r = generate_with_target_omega(spec);
	CHECK(std::abs(r.achieved_omega - 0.5) <= spec.tolerance);
	CHECK(r.achieved_omega >= 0.48);
	CHECK(r.achieved_omega <= 0.52);
	CHECK(r.mixing_weight > 0.0);
	CHECK(r.mixing_weight < 1.0);
	CHECK(r.iterations_used >= 1);
	// the analysis pipeline reproduces the stored omega from the series alone
	CHECK(std::abs(omega(r.series).omega - r.achieved_omega) < 1e-9);
}

TEST_CASE("calibration reaches both ends of the target range at the default length") {
	for (double target : {0.2, 0.8}) {
		SynthSpec spec;
		spec.target_omega = target;
		spec.seed = 3;
		SynthResult r = generate_with_target_omega(spec);
		CHECK(std::abs(r.achieved_omega - target) <= 0.02);
	}
}

TEST_CASE("an unreachable target fails with the best attempt attached") {
	SynthSpec spec;
	spec.target_omega = 0.999; // above the hann-pipeline ceiling at this length
	spec.length = 256;
	spec.max_iters = 12;
	try {
		generate_with_target_omega(spec);
		FAIL("expected CalibrationFailed");
	} catch (const CalibrationFailed& e) {
		CHECK(e.best_omega < 0.999);
		CHECK(e.best_alpha > 0.0);
		CHECK(std::string(e.what()).find("missed target") != std::string::npos);
	}
}

TEST_CASE("sweep items derive per-item seeds from the master seed") {
	auto items = generate_sweep({0.3, 0.6}, 2, 1024, 5);
	REQUIRE(items.size() == 4);
	CHECK(items[0].name == "omega_0.30_1");
	CHECK(items[1].name == "omega_0.30_2");
	CHECK(items[2].name == "omega_0.60_1");
	CHECK(items[3].name == "omega_0.60_2");
	for (const auto& it : items) {
		REQUIRE(it.ok);
		CHECK(std::abs(it.result.achieved_omega - it.target) <= 0.02);
		CHECK(it.result.series.name == it.name);
	}
	// replicate 2 of level 0.3 equals a direct call with the derived seed
	SynthSpec spec;
	spec.target_omega = 0.3;
	spec.length = 1024;
	spec.seed = derive_stream(5, 1);
	CHECK(generate_with_target_omega(spec).series.values == items[1].result.series.values);
	// replicates differ from each other
	CHECK(items[0].result.series.values != items[1].result.series.values);
}

TEST_CASE("sweeps with the same seed are identical, different seeds are not") {
	auto a = generate_sweep({0.4}, 2, 512, 21);
	auto b = generate_sweep({0.4}, 2, 512, 21);
	auto c = generate_sweep({0.4}, 2, 512, 22);
	REQUIRE(a.size() == b.size());
	for (std::size_t i = 0; i < a.size(); ++i) {
		CHECK(a[i].result.series.values == b[i].result.series.values);
		CHECK(a[i].result.achieved_omega == b[i].result.achieved_omega);
		CHECK(a[i].result.mixing_weight == b[i].result.mixing_weight);
	}
	CHECK(a[0].result.series.values != c[0].result.series.values);
}

TEST_CASE("sweep validation") {
	CHECK_THROWS_AS(generate_sweep({}, 3, 1024, 0), InvalidInput);
	CHECK_THROWS_AS(generate_sweep({0.5}, 0, 1024, 0), InvalidInput);
}

} // TEST_SUITE
