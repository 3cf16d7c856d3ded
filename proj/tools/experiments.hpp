#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"

namespace lltcli
{
	inline constexpr const char *kVersion = "lltlab 1.0.0";

	/// Row-oriented table; cells are JSON scalars so one table renders to both
	/// CSV and JSON.
	struct Table
	{
		std::vector<std::string> header;
		std::vector<std::vector<Json>> rows;
	};

	struct Artifact
	{
		std::string stem; // file name without extension
		std::string content;
		std::size_t rows = 0;
	};

	struct ExperimentOutput
	{
		std::vector<Artifact> artifacts;
		Json summary = Json::object();
	};

	/// CSV: integers in decimal, reals as %.17g, strings verbatim, null empty.
	std::string render_csv(const Table &table);
	/// JSON array of row objects; non-finite reals become null.
	std::string render_json(const Table &table);

	/// Runs the configured experiment. Progress goes to `log` one line at a
	/// time; nothing is written to disk here.
	ExperimentOutput run_experiment(const ExperimentConfig &config, std::ostream &log);
} // namespace lltcli
