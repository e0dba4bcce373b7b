#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "specpred/types.hpp"

namespace specpred {

enum class FileFormat { wide_csv, long_csv, jsonl };

enum class MissingPolicy { drop, linear_interpolate, error };

enum class TakeSide { head, tail };

struct PreprocessPolicy {
	MissingPolicy missing = MissingPolicy::drop;
	std::size_t max_len = 4096; // 0 = unlimited
	TakeSide take = TakeSide::head;
	bool zeros_as_missing = false; // treat literal 0.0 samples as missing
};

struct PreprocessResult {
	Dataset dataset;
	std::vector<std::string> warnings; // one entry per removed series
};

/// Load a dataset from disk. Non-numeric cells become NaN missing markers;
/// the preprocessing step decides what happens to them.
///
/// wide_csv: header row; an optional leading `t`/`timestamp` column is ignored;
///           every other column is one covariate.
/// long_csv: header `series_id,t,value`; rows are stably sorted by (series_id, t).
/// jsonl:    one {"name": ..., "values": [...]} object per line; null = missing.
Dataset load_dataset(const std::string& path, FileFormat format, double dt = 1.0);

/// Resolve missing markers (policy first), then truncate to max_len samples
/// from the configured end. Series left with fewer than 2 samples are removed
/// with a warning; removing every series is an error.
PreprocessResult preprocess(const Dataset& d, const PreprocessPolicy& p);

/// One single-series dataset per covariate, in input order, named
/// "<dataset>/<series>".
std::vector<Dataset> split_covariates(const Dataset& d);

FileFormat parse_file_format(const std::string& name);
std::string to_string(FileFormat f);

} // namespace specpred
