#include "config.hpp"

#include <fstream>
#include <map>
#include <set>

namespace lltcli
{
	namespace
	{
		const std::set<std::string> kCommon{"experiment", "seed", "workers", "format"};

		const std::map<std::string, std::set<std::string>> kAllowed{
		    {"exact-markov", {"source", "target", "k_max", "k_grid", "delta"}},
		    {"verify-identities", {"source", "target", "k_max", "shift_max"}},
		    {"simulate-cf",
		     {"target", "estimator", "replicas", "d", "max_steps", "mark_cap", "cells", "delta", "stream_length",
		      "streams", "min_hits"}},
		    {"simulate-doubling",
		     {"target", "estimator", "replicas", "d", "max_steps", "stream_length", "streams", "min_hits"}},
		    {"counterexample",
		     {"source", "system", "target", "k_prune", "budget", "replicas", "stream_length", "streams", "min_hits"}},
		};

		const std::map<std::string, std::set<std::string>> kTargetKeys{
		    {"exact-markov", {"word", "period", "unit", "lengths"}},
		    {"verify-identities", {"word", "period"}},
		    {"simulate-cf", {"threshold", "prime"}},
		    {"simulate-doubling", {"word"}},
		    {"counterexample", {"word", "period", "threshold", "prime"}},
		};

		void reject_unknown(const Json &obj, const std::set<std::string> &allowed, const std::string &path)
		{
			for (auto it = obj.begin(); it != obj.end(); ++it)
				if (!allowed.count(it.key()))
					throw ConfigError(path + it.key(), "unknown key");
		}

		const Json &object_at(const Json &obj, const std::string &key, const std::string &path)
		{
			const Json &v = obj.at(key);
			if (!v.is_object())
				throw ConfigError(path + key, "expected an object");
			return v;
		}

		std::int64_t integer(const Json &v, const std::string &field, std::int64_t lo)
		{
			if (!v.is_number_integer())
				throw ConfigError(field, "expected an integer");
			const auto x = v.get<std::int64_t>();
			if (x < lo)
				throw ConfigError(field, "must be >= " + std::to_string(lo));
			return x;
		}

		std::uint64_t unsigned_integer(const Json &v, const std::string &field, std::uint64_t lo)
		{
			if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
				throw ConfigError(field, "expected a non-negative integer");
			const auto x = v.get<std::uint64_t>();
			if (x < lo)
				throw ConfigError(field, "must be >= " + std::to_string(lo));
			return x;
		}

		double real(const Json &v, const std::string &field)
		{
			if (!v.is_number())
				throw ConfigError(field, "expected a number");
			return v.get<double>();
		}

		std::string text(const Json &v, const std::string &field)
		{
			if (!v.is_string())
				throw ConfigError(field, "expected a string");
			return v.get<std::string>();
		}

		std::string one_of(const Json &v, const std::string &field, const std::set<std::string> &choices)
		{
			const std::string s = text(v, field);
			if (!choices.count(s))
			{
				std::string list;
				for (const auto &c : choices)
					list += (list.empty() ? "" : "|") + c;
				throw ConfigError(field, "must be one of " + list);
			}
			return s;
		}

		std::vector<std::int64_t> integer_list(const Json &v, const std::string &field, std::int64_t lo)
		{
			if (!v.is_array())
				throw ConfigError(field, "expected an array");
			if (v.empty())
				throw ConfigError(field, "grid must be nonempty");
			std::vector<std::int64_t> out;
			for (std::size_t i = 0; i < v.size(); ++i)
				out.push_back(integer(v[i], field + "[" + std::to_string(i) + "]", lo));
			return out;
		}

		std::vector<double> real_list(const Json &v, const std::string &field)
		{
			if (!v.is_array() || v.empty())
				throw ConfigError(field, "expected a nonempty array of numbers");
			std::vector<double> out;
			for (std::size_t i = 0; i < v.size(); ++i)
				out.push_back(real(v[i], field + "[" + std::to_string(i) + "]"));
			return out;
		}

		std::string digit_word(const Json &v, const std::string &field, int max_digit)
		{
			const std::string w = text(v, field);
			if (w.empty())
				throw ConfigError(field, "word must be nonempty");
			for (const char c : w)
				if (c < '0' || c > '0' + max_digit)
					throw ConfigError(field, "symbols must be digits 0.." + std::to_string(max_digit));
			return w;
		}

		SourceSpec parse_source(const Json &s)
		{
			const std::string p = "source.";
			if (!s.contains("type"))
				throw ConfigError("source.type", "missing");
			SourceSpec out;
			out.type = one_of(s.at("type"), "source.type", {"iid", "markov"});
			if (out.type == "iid")
			{
				reject_unknown(s, {"type", "probabilities"}, p);
				if (!s.contains("probabilities"))
					throw ConfigError("source.probabilities", "missing");
				out.probabilities = real_list(s.at("probabilities"), "source.probabilities");
			}
			else
			{
				reject_unknown(s, {"type", "transitions"}, p);
				if (!s.contains("transitions") || !s.at("transitions").is_array() || s.at("transitions").empty())
					throw ConfigError("source.transitions", "expected a nonempty array of rows");
				const Json &rows = s.at("transitions");
				for (std::size_t i = 0; i < rows.size(); ++i)
				{
					out.transitions.push_back(real_list(rows[i], "source.transitions[" + std::to_string(i) + "]"));
					if (out.transitions.back().size() != rows.size())
						throw ConfigError("source.transitions", "matrix must be square");
				}
			}
			return out;
		}

		TargetSpec parse_target(const Json &t, const std::string &experiment, bool binary)
		{
			reject_unknown(t, kTargetKeys.at(experiment), "target.");
			TargetSpec out;
			const int max_digit = binary ? 1 : 9;
			if (t.contains("word"))
				out.word = digit_word(t.at("word"), "target.word", max_digit);
			if (t.contains("unit"))
			{
				out.unit = digit_word(t.at("unit"), "target.unit", max_digit);
				if (!t.contains("lengths"))
					throw ConfigError("target.lengths", "missing (required with target.unit)");
				for (const auto l : integer_list(t.at("lengths"), "target.lengths", 1))
					out.lengths.push_back(static_cast<int>(l));
			}
			else if (t.contains("lengths"))
				throw ConfigError("target.lengths", "only valid together with target.unit");
			if (t.contains("period"))
			{
				if (!out.word)
					throw ConfigError("target.period", "only valid together with target.word");
				const auto p = integer(t.at("period"), "target.period", 1);
				if (p > static_cast<std::int64_t>(out.word->size()))
					throw ConfigError("target.period", "must not exceed the word length");
				out.period = static_cast<int>(p);
			}
			if (t.contains("threshold"))
				out.threshold = integer(t.at("threshold"), "target.threshold", 2);
			if (t.contains("prime"))
			{
				if (!t.at("prime").is_boolean())
					throw ConfigError("target.prime", "expected a boolean");
				out.prime = t.at("prime").get<bool>();
			}
			const int kinds = (out.word ? 1 : 0) + (out.unit ? 1 : 0) + (out.threshold ? 1 : 0);
			if (kinds != 1)
				throw ConfigError("target", "give exactly one of word, unit+lengths, threshold");
			if (out.prime && !out.threshold)
				throw ConfigError("target.prime", "only valid for threshold targets");
			return out;
		}
	} // namespace

	ExperimentConfig parse_config(const Json &doc)
	{
		if (!doc.is_object())
			throw ConfigError("config", "expected a JSON object");
		if (!doc.contains("experiment"))
			throw ConfigError("experiment", "missing");
		ExperimentConfig c;
		c.experiment = text(doc.at("experiment"), "experiment");
		if (!kAllowed.count(c.experiment))
			throw ConfigError("experiment", "unknown experiment '" + c.experiment +
			                                    "' (exact-markov, simulate-cf, simulate-doubling, verify-identities, "
			                                    "counterexample)");
		std::set<std::string> allowed = kCommon;
		allowed.insert(kAllowed.at(c.experiment).begin(), kAllowed.at(c.experiment).end());
		reject_unknown(doc, allowed, "");

		const auto &e = c.experiment;
		if (doc.contains("seed"))
			c.seed = unsigned_integer(doc.at("seed"), "seed", 0);
		if (doc.contains("workers"))
			c.workers = static_cast<int>(integer(doc.at("workers"), "workers", 1));
		if (doc.contains("format"))
			c.format = one_of(doc.at("format"), "format", {"csv", "json"});

		if (doc.contains("source"))
			c.source = parse_source(object_at(doc, "source", ""));
		if (doc.contains("system"))
			c.system = one_of(doc.at("system"), "system", {"gauss", "doubling"});
		if (e == "simulate-cf")
			c.system = "gauss";
		if (e == "simulate-doubling")
			c.system = "doubling";
		if ((e == "exact-markov" || e == "verify-identities") && !c.source)
			throw ConfigError("source", "missing");
		if (e == "counterexample" && (c.source.has_value() == c.system.has_value()))
			throw ConfigError("source", "counterexample needs exactly one of source, system");

		if (!doc.contains("target"))
			throw ConfigError("target", "missing");
		const bool binary = c.system == std::optional<std::string>("doubling");
		c.target = parse_target(object_at(doc, "target", ""), e, binary);
		if (e == "simulate-cf" && !c.target.threshold)
			throw ConfigError("target.threshold", "missing");
		if (e == "counterexample")
		{
			if (c.source && !c.target.word)
				throw ConfigError("target.word", "exact counterexample needs a word target");
			if (c.system == std::optional<std::string>("gauss") && !c.target.threshold)
				throw ConfigError("target.threshold", "Gauss counterexample needs a threshold target");
			if (c.system == std::optional<std::string>("doubling") && !c.target.word)
				throw ConfigError("target.word", "doubling counterexample needs a word target");
		}

		if (doc.contains("k_max"))
			c.k_max = integer(doc.at("k_max"), "k_max", 1);
		if (doc.contains("k_grid"))
			c.k_grid = integer_list(doc.at("k_grid"), "k_grid", 1);
		if (doc.contains("delta"))
		{
			c.delta = real(doc.at("delta"), "delta");
			if (!(c.delta > 0.0 && c.delta <= 1.0))
				throw ConfigError("delta", "must lie in (0, 1]");
		}
		if (doc.contains("shift_max"))
			c.shift_max = integer(doc.at("shift_max"), "shift_max", 1);
		if (doc.contains("estimator"))
			c.estimator = one_of(doc.at("estimator"), "estimator", {"replica", "ergodic"});
		if (doc.contains("replicas"))
			c.replicas = unsigned_integer(doc.at("replicas"), "replicas", 1);
		if (doc.contains("d"))
			c.d = static_cast<int>(integer(doc.at("d"), "d", 1));
		if (doc.contains("max_steps"))
			c.max_steps = integer(doc.at("max_steps"), "max_steps", 1);
		if (doc.contains("mark_cap"))
			c.mark_cap = integer(doc.at("mark_cap"), "mark_cap", 0);
		if (doc.contains("cells"))
		{
			const Json &cells = object_at(doc, "cells", "");
			reject_unknown(cells, {"k", "a"}, "cells.");
			if (!cells.contains("k") || !cells.contains("a"))
				throw ConfigError("cells", "needs both k and a grids");
			c.cell_k = integer_list(cells.at("k"), "cells.k", 1);
			c.cell_a = integer_list(cells.at("a"), "cells.a", c.target.threshold.value_or(1));
		}
		if (e == "simulate-cf" && c.estimator == "replica" && c.cell_k.empty())
			throw ConfigError("cells", "missing (required for replica runs)");
		if (doc.contains("stream_length"))
			c.stream_length = unsigned_integer(doc.at("stream_length"), "stream_length", 1);
		if (doc.contains("streams"))
			c.streams = static_cast<int>(integer(doc.at("streams"), "streams", 1));
		if (doc.contains("min_hits"))
			c.min_hits = unsigned_integer(doc.at("min_hits"), "min_hits", 1);
		if (doc.contains("k_prune"))
			c.k_prune = integer(doc.at("k_prune"), "k_prune", 1);
		if (doc.contains("budget"))
		{
			c.budget = real(doc.at("budget"), "budget");
			if (!(c.budget > 0))
				throw ConfigError("budget", "must be positive");
		}
		return c;
	}

	ExperimentConfig load_config(const std::string &path)
	{
		std::ifstream in(path);
		if (!in)
			throw ConfigError("--config", "cannot open '" + path + "'");
		Json doc;
		try
		{
			doc = Json::parse(in);
		}
		catch (const Json::parse_error &e)
		{
			throw ConfigError("--config", std::string("malformed JSON: ") + e.what());
		}
		return parse_config(doc);
	}

	Json canonical(const ExperimentConfig &c)
	{
		Json all;
		all["experiment"] = c.experiment;
		all["seed"] = c.seed;
		all["format"] = c.format;
		if (c.source)
		{
			Json s{{"type", c.source->type}};
			if (c.source->type == "iid")
				s["probabilities"] = c.source->probabilities;
			else
				s["transitions"] = c.source->transitions;
			all["source"] = s;
		}
		if (c.system)
			all["system"] = *c.system;
		Json t = Json::object();
		if (c.target.word)
			t["word"] = *c.target.word;
		if (c.target.period)
			t["period"] = *c.target.period;
		if (c.target.unit)
		{
			t["unit"] = *c.target.unit;
			t["lengths"] = c.target.lengths;
		}
		if (c.target.threshold)
		{
			t["threshold"] = *c.target.threshold;
			t["prime"] = c.target.prime;
		}
		all["target"] = t;
		all["k_max"] = c.k_max;
		if (!c.k_grid.empty())
			all["k_grid"] = c.k_grid;
		all["delta"] = c.delta;
		all["shift_max"] = c.shift_max;
		all["estimator"] = c.estimator;
		all["replicas"] = c.replicas;
		all["d"] = c.d;
		all["max_steps"] = c.max_steps;
		all["mark_cap"] = c.mark_cap;
		if (!c.cell_k.empty())
			all["cells"] = Json{{"k", c.cell_k}, {"a", c.cell_a}};
		all["stream_length"] = c.stream_length;
		all["streams"] = c.streams;
		all["min_hits"] = c.min_hits;
		all["k_prune"] = c.k_prune;
		all["budget"] = c.budget;

		// keep only what the experiment reads; "system" is implied for simulations
		std::set<std::string> keep{"experiment", "seed", "format"};
		keep.insert(kAllowed.at(c.experiment).begin(), kAllowed.at(c.experiment).end());
		Json out = Json::object();
		for (auto it = all.begin(); it != all.end(); ++it)
			if (keep.count(it.key()))
				out[it.key()] = it.value();
		return out;
	}

	std::string config_hash(const ExperimentConfig &config)
	{
		std::uint64_t h = 14695981039346656037ull;
		for (const unsigned char ch : canonical(config).dump())
		{
			h ^= ch;
			h *= 1099511628211ull;
		}
		char buf[17];
		std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
		return buf;
	}

	std::string subcommand_for(const std::string &experiment)
	{
		if (experiment == "exact-markov")
			return "exact";
		if (experiment == "simulate-cf" || experiment == "simulate-doubling")
			return "simulate";
		if (experiment == "verify-identities")
			return "verify";
		return "counterexample";
	}
} // namespace lltcli
