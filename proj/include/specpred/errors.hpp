#pragma once

#include <stdexcept>
#include <string>

namespace specpred {

// Base for all data/computation failures. CLI maps these to exit code 2;
// std::invalid_argument (bad config values) maps to exit code 1.
class Error : public std::runtime_error {
public:
	explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public Error {
public:
	using Error::Error;
};

class MissingValues : public Error {
public:
	using Error::Error;
};

class AllSeriesRemoved : public Error {
public:
	using Error::Error;
};

class InvalidInput : public Error {
public:
	using Error::Error;
};

class SeriesTooShort : public Error {
public:
	using Error::Error;
};

class DegenerateSpectrum : public Error {
public:
	using Error::Error;
};

class AllSeriesDegenerate : public Error {
public:
	using Error::Error;
};

class NoValidPairs : public Error {
public:
	using Error::Error;
};

class AllSeriesFailed : public Error {
public:
	using Error::Error;
};

class UndefinedDelta : public Error {
public:
	using Error::Error;
};

class DegenerateVariance : public Error {
public:
	using Error::Error;
};

class TooFewPoints : public Error {
public:
	using Error::Error;
};

class AllXEqual : public Error {
public:
	using Error::Error;
};

class InvalidShape : public Error {
public:
	using Error::Error;
};

class CalibrationFailed : public Error {
public:
	CalibrationFailed(const std::string& msg, double best_alpha, double best_omega)
		: Error(msg), best_alpha(best_alpha), best_omega(best_omega) {}

	double best_alpha;
	double best_omega;
};

} // namespace specpred
