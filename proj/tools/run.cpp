#include "run.hpp"

#include <filesystem>
#include <fstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "experiments.hpp"
#include "lltlab/types.hpp"

namespace lltcli
{
	namespace
	{
		namespace fs = std::filesystem;

		int fail(std::ostream &err, int code, const std::string &kind, const std::string &message,
		         const std::string &field = {})
		{
			Json e{{"kind", kind}, {"message", message}};
			if (!field.empty())
				e["field"] = field;
			err << Json{{"error", e}}.dump() << "\n";
			return code;
		}

		std::string fnv1a(const std::string &s)
		{
			std::uint64_t h = 14695981039346656037ull;
			for (const unsigned char ch : s)
			{
				h ^= ch;
				h *= 1099511628211ull;
			}
			char buf[17];
			std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
			return buf;
		}

		void write_file(const fs::path &path, const std::string &content)
		{
			std::ofstream f(path, std::ios::binary | std::ios::trunc);
			f << content;
			if (!f)
				throw std::runtime_error("cannot write " + path.string());
		}

		int print_report(const fs::path &dir, std::ostream &out, std::ostream &err)
		{
			std::ifstream in(dir / "manifest.json");
			if (!in)
				return fail(err, kRuntime, "missing-run", "no manifest in " + dir.string() + "; run the experiment first");
			const Json m = Json::parse(in);
			out << "run " << m.at("config_hash").get<std::string>() << " (" << m.at("experiment").get<std::string>()
			    << ", seed " << m.at("seed") << ")\n";
			for (auto it = m.at("summary").begin(); it != m.at("summary").end(); ++it)
				out << "  " << it.key() << " = " << it.value().dump() << "\n";
			for (const auto &a : m.at("artifacts"))
				out << "  artifact " << a.at("file").get<std::string>() << " (" << a.at("rows") << " rows)\n";
			return kOk;
		}
	} // namespace

	int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
	{
		CLI::App app{"Hitting-time and local-limit experiments"};
		app.require_subcommand(1, 1);
		std::string config_path, out_dir = "runs", format;
		std::uint64_t seed = 0;
		int workers = 1;
		const std::vector<std::pair<const char *, const char *>> subs{
		    {"exact", "exact hitting/return laws and LLT ratio tables on a Markov source"},
		    {"simulate", "Monte-Carlo estimation on the Gauss or doubling map"},
		    {"verify", "exact identity suite on a Markov source"},
		    {"counterexample", "pruned target B = A cap {phi_A != k}"},
		    {"report", "summarize an existing run of the config"},
		};
		std::vector<CLI::App *> handles;
		std::vector<CLI::Option *> seed_opts, worker_opts, format_opts;
		for (const auto &[name, help] : subs)
		{
			CLI::App *s = app.add_subcommand(name, help);
			s->add_option("--config", config_path, "experiment config (JSON)")->required();
			seed_opts.push_back(s->add_option("--seed", seed, "override the config seed"));
			worker_opts.push_back(s->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber));
			s->add_option("--out", out_dir, "output root")->capture_default_str();
			format_opts.push_back(
			    s->add_option("--format", format, "artifact format")->check(CLI::IsMember({"csv", "json"})));
			handles.push_back(s);
		}

		std::vector<std::string> reversed(args.rbegin(), args.rend());
		try
		{
			app.parse(reversed);
		}
		catch (const CLI::CallForHelp &e)
		{
			return app.exit(e, out, err);
		}
		catch (const CLI::ParseError &e)
		{
			return fail(err, kUsage, "usage", e.what());
		}

		std::size_t which = 0;
		while (!handles[which]->parsed())
			++which;
		const std::string sub = subs[which].first;

		ExperimentConfig config;
		try
		{
			config = load_config(config_path);
			if (seed_opts[which]->count())
				config.seed = seed;
			if (worker_opts[which]->count())
				config.workers = workers;
			if (format_opts[which]->count())
				config.format = format;
			if (sub != "report" && subcommand_for(config.experiment) != sub)
				throw ConfigError("experiment", "'" + config.experiment + "' runs under the '" +
				                                    subcommand_for(config.experiment) + "' subcommand");
		}
		catch (const ConfigError &e)
		{
			return fail(err, kUsage, "config", e.what(), e.field());
		}

		const std::string hash = config_hash(config);
		const fs::path dir = fs::path(out_dir) / hash;
		if (sub == "report")
			return print_report(dir, out, err);

		try
		{
			out << "run " << hash << ": " << config.experiment << ", seed " << config.seed << "\n";
			const ExperimentOutput result = run_experiment(config, out);
			fs::create_directories(dir);
			const std::string ext = config.format == "json" ? ".json" : ".csv";
			Json artifacts = Json::array();
			for (const auto &a : result.artifacts)
			{
				const std::string file = a.stem + ext;
				write_file(dir / file, a.content);
				artifacts.push_back({{"file", file}, {"rows", a.rows}, {"fnv1a", fnv1a(a.content)}});
				out << "wrote " << (dir / file).string() << "\n";
			}
			const Json manifest{{"version", kVersion},     {"experiment", config.experiment},
			                    {"config_hash", hash},      {"seed", config.seed},
			                    {"config", canonical(config)}, {"artifacts", artifacts},
			                    {"summary", result.summary}};
			write_file(dir / "manifest.json", manifest.dump(2) + "\n");
			out << "wrote " << (dir / "manifest.json").string() << "\n";
			return kOk;
		}
		catch (const ConfigError &e)
		{
			return fail(err, kUsage, "config", e.what(), e.field());
		}
		catch (const lltlab::BudgetExceeded &e)
		{
			return fail(err, kBudget, "budget", e.what());
		}
		catch (const lltlab::InsufficientData &e)
		{
			return fail(err, kInsufficient, "insufficient-data", e.what());
		}
		catch (const lltlab::InvalidArgument &e)
		{
			return fail(err, kUsage, "invalid-argument", e.what());
		}
		catch (const std::exception &e)
		{
			return fail(err, kRuntime, "runtime", e.what());
		}
	}
} // namespace lltcli
