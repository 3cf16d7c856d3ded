#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace lltcli
{
	using Json = nlohmann::json;

	/// Schema violation; `field` is the dotted path of the offending key.
	class ConfigError : public std::runtime_error
	{
	public:
		ConfigError(std::string field, const std::string &message)
		    : std::runtime_error(field + ": " + message), field_(std::move(field))
		{
		}
		const std::string &field() const { return field_; }

	private:
		std::string field_;
	};

	struct SourceSpec
	{
		std::string type; // "iid" or "markov"
		std::vector<double> probabilities;
		std::vector<std::vector<double>> transitions;
	};

	struct TargetSpec
	{
		std::optional<std::string> word;
		std::optional<int> period;
		// periodic family: unit repeated to each length
		std::optional<std::string> unit;
		std::vector<int> lengths;
		std::optional<std::int64_t> threshold;
		bool prime = false;
	};

	struct ExperimentConfig
	{
		std::string experiment;
		std::optional<SourceSpec> source;
		std::optional<std::string> system;
		TargetSpec target;

		std::int64_t k_max = 1024;
		std::vector<std::int64_t> k_grid;
		double delta = 0.5;
		std::int64_t shift_max = 16;

		std::string estimator = "replica";
		std::uint64_t replicas = 100000;
		int d = 1;
		std::int64_t max_steps = 1000;
		std::int64_t mark_cap = 0;
		std::vector<std::int64_t> cell_k;
		std::vector<std::int64_t> cell_a;
		std::uint64_t stream_length = 1 << 20;
		int streams = 1;
		std::uint64_t min_hits = 10000;

		std::int64_t k_prune = 1;
		double budget = 1e9;

		std::uint64_t seed = 1;
		int workers = 1;
		std::string format = "csv";
	};

	/// Strict parse: unknown keys, wrong types and out-of-range values raise
	/// ConfigError naming the field.
	ExperimentConfig parse_config(const Json &doc);
	ExperimentConfig load_config(const std::string &path);

	/// Canonical JSON form of everything that affects the artifacts (the
	/// worker count is left out, it never changes the output).
	Json canonical(const ExperimentConfig &config);

	/// FNV-1a 64 of the canonical dump, 16 hex digits.
	std::string config_hash(const ExperimentConfig &config);

	/// Subcommand that runs a given experiment kind.
	std::string subcommand_for(const std::string &experiment);
} // namespace lltcli
