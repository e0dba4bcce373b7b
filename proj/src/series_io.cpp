#include "specpred/series_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <json.hpp>

#include "specpred/errors.hpp"

namespace specpred {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
	std::size_t a = 0, b = s.size();
	while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
		++a;
	while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
		--b;
	return s.substr(a, b - a);
}

std::string lower(std::string s) {
	std::transform(s.begin(), s.end(), s.begin(),
	               [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
	return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
	std::vector<std::string> out;
	std::string cell;
	std::stringstream ss(line);
	while (std::getline(ss, cell, ','))
		out.push_back(trim(cell));
	if (!line.empty() && line.back() == ',')
		out.emplace_back();
	return out;
}

// Any cell that does not parse fully as a number becomes a missing marker:
// empty cells, NaN/na/null spellings, and arbitrary non-numeric text alike.
double parse_cell(const std::string& cell) {
	if (cell.empty())
		return kMissing;
	try {
		std::size_t pos = 0;
		double v = std::stod(cell, &pos);
		if (pos != cell.size())
			return kMissing;
		return v;
	} catch (const std::exception&) {
		return kMissing;
	}
}

std::string file_stem(const std::string& path) {
	std::size_t slash = path.find_last_of("/\\");
	std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
	std::size_t dot = base.find_last_of('.');
	if (dot != std::string::npos && dot > 0)
		base = base.substr(0, dot);
	return base;
}

std::vector<std::string> read_lines(const std::string& path) {
	std::ifstream in(path);
	if (!in)
		throw ParseError("cannot open '" + path + "'");
	std::vector<std::string> lines;
	std::string line;
	while (std::getline(in, line)) {
		if (!line.empty() && line.back() == '\r')
			line.pop_back();
		lines.push_back(line);
	}
	return lines;
}

bool is_time_column(const std::string& header) {
	const std::string h = lower(header);
	return h == "t" || h == "time" || h == "timestamp" || h == "date" || h == "ds";
}

Dataset load_wide_csv(const std::string& path, double dt) {
	auto lines = read_lines(path);
	if (lines.empty())
		throw ParseError(path + ": zero usable columns (empty file)");
	auto header = split_csv_line(lines[0]);
	if (header.empty())
		throw ParseError(path + ": zero usable columns (empty header row)");

	std::size_t first_col = is_time_column(header[0]) ? 1 : 0;
	if (first_col >= header.size())
		throw ParseError(path + ": zero usable columns (no value columns)");

	Dataset d;
	d.name = file_stem(path);
	for (std::size_t c = first_col; c < header.size(); ++c) {
		TimeSeries s;
		s.name = header[c].empty() ? "col" + std::to_string(c) : header[c];
		s.dt = dt;
		d.series.push_back(std::move(s));
	}

	for (std::size_t r = 1; r < lines.size(); ++r) {
		if (trim(lines[r]).empty())
			continue;
		auto cells = split_csv_line(lines[r]);
		if (cells.size() != header.size())
			throw ParseError(path + ": row " + std::to_string(r + 1) + " has " +
			                 std::to_string(cells.size()) + " cells, expected " +
			                 std::to_string(header.size()));
		for (std::size_t c = first_col; c < header.size(); ++c)
			d.series[c - first_col].values.push_back(parse_cell(cells[c]));
	}
	return d;
}

Dataset load_long_csv(const std::string& path, double dt) {
	auto lines = read_lines(path);
	if (lines.empty())
		throw ParseError(path + ": zero usable columns (empty file)");
	auto header = split_csv_line(lines[0]);
	if (header.size() != 3 || lower(header[0]) != "series_id" ||
	    lower(header[1]) != "t" || lower(header[2]) != "value")
		throw ParseError(path + ": long csv needs header 'series_id,t,value'");

	struct Row {
		double t;
		double v;
		std::size_t order; // input order breaks timestamp ties stably
	};
	// Series appear in the output in order of first appearance.
	std::vector<std::string> order;
	std::map<std::string, std::vector<Row>> rows;
	for (std::size_t r = 1; r < lines.size(); ++r) {
		if (trim(lines[r]).empty())
			continue;
		auto cells = split_csv_line(lines[r]);
		if (cells.size() != 3)
			throw ParseError(path + ": row " + std::to_string(r + 1) + " has " +
			                 std::to_string(cells.size()) + " cells, expected 3");
		const std::string where = path + ": row " + std::to_string(r + 1);
		const std::string& id = cells[0];
		if (id.empty())
			throw ParseError(where + ": empty series_id");
		double t = parse_cell(cells[1]);
		if (std::isnan(t))
			throw ParseError(where + ": missing or non-numeric timestamp");
		double v = parse_cell(cells[2]);
		if (rows.find(id) == rows.end())
			order.push_back(id);
		rows[id].push_back(Row{t, v, r});
	}

	Dataset d;
	d.name = file_stem(path);
	for (const auto& id : order) {
		auto& rs = rows[id];
		std::stable_sort(rs.begin(), rs.end(), [](const Row& a, const Row& b) {
			if (a.t != b.t)
				return a.t < b.t;
			return a.order < b.order;
		});
		TimeSeries s;
		s.name = id;
		s.dt = dt;
		s.values.reserve(rs.size());
		for (const auto& row : rs)
			s.values.push_back(row.v);
		d.series.push_back(std::move(s));
	}
	return d;
}

Dataset load_jsonl(const std::string& path, double dt) {
	auto lines = read_lines(path);
	Dataset d;
	d.name = file_stem(path);
	for (std::size_t r = 0; r < lines.size(); ++r) {
		if (trim(lines[r]).empty())
			continue;
		const std::string where = path + ": line " + std::to_string(r + 1);
		nlohmann::json obj;
		try {
			obj = nlohmann::json::parse(lines[r]);
		} catch (const std::exception& e) {
			throw ParseError(where + ": " + e.what());
		}
		if (!obj.is_object() || !obj.contains("name") || !obj.contains("values"))
			throw ParseError(where + ": expected object with 'name' and 'values'");
		if (!obj["name"].is_string() || !obj["values"].is_array())
			throw ParseError(where + ": 'name' must be a string, 'values' an array");
		TimeSeries s;
		s.name = obj["name"].get<std::string>();
		s.dt = dt;
		for (const auto& v : obj["values"]) {
			if (v.is_null())
				s.values.push_back(kMissing);
			else if (v.is_number())
				s.values.push_back(v.get<double>());
			else
				throw ParseError(where + ": values must be numbers or null");
		}
		d.series.push_back(std::move(s));
	}
	return d;
}

// Linear interpolation across interior gaps. Leading/trailing runs have no
// flanking values and are dropped instead.
std::vector<double> interpolate_missing(const std::vector<double>& v) {
	std::size_t first = 0, last = v.size();
	while (first < last && std::isnan(v[first]))
		++first;
	while (last > first && std::isnan(v[last - 1]))
		--last;
	std::vector<double> out(v.begin() + static_cast<std::ptrdiff_t>(first),
	                        v.begin() + static_cast<std::ptrdiff_t>(last));
	std::size_t i = 0;
	while (i < out.size()) {
		if (!std::isnan(out[i])) {
			++i;
			continue;
		}
		std::size_t j = i;
		while (j < out.size() && std::isnan(out[j]))
			++j;
		// out[i-1] and out[j] are guaranteed finite here.
		double lo = out[i - 1], hi = out[j];
		double gap = static_cast<double>(j - (i - 1));
		for (std::size_t k = i; k < j; ++k)
			out[k] = lo + (hi - lo) * static_cast<double>(k - (i - 1)) / gap;
		i = j;
	}
	return out;
}

} // namespace

Dataset load_dataset(const std::string& path, FileFormat format, double dt) {
	Dataset d;
	switch (format) {
	case FileFormat::wide_csv:
		d = load_wide_csv(path, dt);
		break;
	case FileFormat::long_csv:
		d = load_long_csv(path, dt);
		break;
	case FileFormat::jsonl:
		d = load_jsonl(path, dt);
		break;
	}
	if (d.series.empty())
		throw ParseError(path + ": no series found");
	validate_dataset(d);
	return d;
}

PreprocessResult preprocess(const Dataset& d, const PreprocessPolicy& p) {
	validate_dataset(d);
	PreprocessResult res;
	res.dataset.name = d.name;
	for (const auto& s : d.series) {
		std::vector<double> v = s.values;
		if (p.zeros_as_missing)
			for (double& x : v)
				if (x == 0.0)
					x = kMissing;

		bool has_missing = std::any_of(v.begin(), v.end(),
		                               [](double x) { return std::isnan(x); });
		if (has_missing) {
			switch (p.missing) {
			case MissingPolicy::error:
				throw MissingValues("series '" + s.name + "' has missing values");
			case MissingPolicy::drop: {
				std::vector<double> kept;
				kept.reserve(v.size());
				for (double x : v)
					if (!std::isnan(x))
						kept.push_back(x);
				v = std::move(kept);
				break;
			}
			case MissingPolicy::linear_interpolate:
				v = interpolate_missing(v);
				break;
			}
		}

		if (p.max_len > 0 && v.size() > p.max_len) {
			if (p.take == TakeSide::head)
				v.resize(p.max_len);
			else
				v.erase(v.begin(), v.end() - static_cast<std::ptrdiff_t>(p.max_len));
		}

		if (v.size() < 2) {
			res.warnings.push_back("series '" + s.name + "' removed: only " +
			                       std::to_string(v.size()) + " usable samples");
			continue;
		}
		TimeSeries out;
		out.name = s.name;
		out.dt = s.dt;
		out.values = std::move(v);
		require_finite(out);
		res.dataset.series.push_back(std::move(out));
	}
	if (res.dataset.series.empty())
		throw AllSeriesRemoved("dataset '" + d.name + "': every series was removed by preprocessing");
	return res;
}

std::vector<Dataset> split_covariates(const Dataset& d) {
	std::vector<Dataset> out;
	out.reserve(d.series.size());
	for (const auto& s : d.series) {
		Dataset one;
		one.name = d.name + "/" + s.name;
		one.series.push_back(s);
		out.push_back(std::move(one));
	}
	return out;
}

FileFormat parse_file_format(const std::string& name) {
	if (name == "wide_csv" || name == "wide")
		return FileFormat::wide_csv;
	if (name == "long_csv" || name == "long")
		return FileFormat::long_csv;
	if (name == "jsonl")
		return FileFormat::jsonl;
	throw std::invalid_argument("unknown file format '" + name + "'");
}

std::string to_string(FileFormat f) {
	switch (f) {
	case FileFormat::wide_csv:
		return "wide_csv";
	case FileFormat::long_csv:
		return "long_csv";
	case FileFormat::jsonl:
		return "jsonl";
	}
	return "?";
}

} // namespace specpred
