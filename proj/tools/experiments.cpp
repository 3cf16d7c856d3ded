#include "experiments.hpp"

#include <algorithm>
#include <cmath>

#include "lltlab/branch_systems.hpp"
#include "lltlab/csv.hpp"
#include "lltlab/estimators.hpp"
#include "lltlab/markov_pattern.hpp"
#include "lltlab/theory.hpp"

namespace lltcli
{
	using namespace lltlab;

	std::string render_csv(const Table &table)
	{
		std::string s = csv_line(table.header);
		for (const auto &row : table.rows)
		{
			std::vector<std::string> f;
			for (const auto &v : row)
			{
				if (v.is_number_float())
					f.push_back(format_real(v.get<double>()));
				else if (v.is_number())
					f.push_back(v.dump());
				else if (v.is_string())
					f.push_back(v.get<std::string>());
				else if (v.is_boolean())
					f.push_back(v.get<bool>() ? "true" : "false");
				else
					f.emplace_back();
			}
			s += csv_line(f);
		}
		return s;
	}

	std::string render_json(const Table &table)
	{
		Json out = Json::array();
		for (const auto &row : table.rows)
		{
			Json obj = Json::object();
			for (std::size_t i = 0; i < table.header.size(); ++i)
				obj[table.header[i]] = row[i];
			out.push_back(obj);
		}
		return out.dump(1) + "\n";
	}

	namespace
	{
		Artifact make_artifact(const std::string &stem, const Table &table, const std::string &format)
		{
			return {stem, format == "json" ? render_json(table) : render_csv(table), table.rows.size()};
		}

		MarkovSource make_source(const SourceSpec &s)
		{
			if (s.type == "iid")
				return MarkovSource::iid(Eigen::Map<const VectorXd>(s.probabilities.data(),
				                                                    static_cast<Index>(s.probabilities.size())));
			const auto n = static_cast<Index>(s.transitions.size());
			MatrixXd p(n, n);
			for (Index i = 0; i < n; ++i)
				for (Index j = 0; j < n; ++j)
					p(i, j) = s.transitions[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
			return MarkovSource(p);
		}

		Word digits_of(const std::string &text)
		{
			Word w;
			for (const char c : text)
				w.push_back(static_cast<Symbol>(c - '0'));
			return w;
		}

		std::vector<Digit> stream_word(const std::string &text)
		{
			std::vector<Digit> w;
			for (const char c : text)
				w.push_back(static_cast<Digit>(c - '0'));
			return w;
		}

		std::vector<PatternTarget> word_family(const TargetSpec &t)
		{
			if (t.word)
				return {PatternTarget::parse(*t.word, t.period)};
			std::vector<PatternTarget> out;
			for (const int l : t.lengths)
				out.push_back(PatternTarget::periodic(digits_of(*t.unit), l));
			return out;
		}

		TargetScan scan_target(const TargetSpec &t)
		{
			if (t.threshold)
				return TargetScan::threshold(static_cast<Digit>(*t.threshold), t.prime);
			return TargetScan::word(stream_word(*t.word));
		}

		double exact_threshold_measure(const TargetSpec &t)
		{
			return t.prime ? cf_prime_threshold_measure(*t.threshold) : cf_threshold_measure(*t.threshold);
		}

		Table report_table(const LLTReport &r)
		{
			Table t;
			t.header = r.key_names;
			for (const char *h : {"count", "N", "estimate", "prediction", "ratio", "ci_low", "ci_high", "t", "in_summary"})
				t.header.emplace_back(h);
			for (const auto &row : r.rows)
			{
				std::vector<Json> v;
				for (const auto k : row.key)
					v.emplace_back(k);
				v.emplace_back(row.count);
				v.emplace_back(row.n);
				for (const double x : {row.estimate, row.prediction, row.ratio, row.ci_low, row.ci_high, row.t})
					v.emplace_back(x);
				v.emplace_back(row.in_summary);
				t.rows.push_back(std::move(v));
			}
			return t;
		}

		Table llt_rows_table(const std::vector<LLTRow> &rows)
		{
			Table t{{"l", "k", "t", "exact", "predicted", "ratio"}, {}};
			for (const auto &r : rows)
				t.rows.push_back({r.l, r.k, r.t, r.exact, r.predicted, r.ratio});
			return t;
		}

		// max |ratio - 1| per word length, in family order
		Json worst_by_length(const std::vector<LLTRow> &rows, const std::vector<PatternTarget> &family)
		{
			Json out = Json::array();
			for (const auto &target : family)
			{
				double worst = -1;
				for (const auto &r : rows)
					if (r.l == target.length())
						worst = std::max(worst, std::abs(r.ratio - 1.0));
				out.push_back(Json{{"l", target.length()}, {"max_error", worst < 0 ? Json() : Json(worst)}});
			}
			return out;
		}

		bool strictly_decreasing(const Json &worst)
		{
			for (std::size_t i = 1; i < worst.size(); ++i)
				if (worst[i]["max_error"].is_null() || worst[i - 1]["max_error"].is_null() ||
				    !(worst[i]["max_error"].get<double>() < worst[i - 1]["max_error"].get<double>()))
					return false;
			return true;
		}

		ExperimentOutput exact_markov(const ExperimentConfig &c, std::ostream &log)
		{
			ExperimentOutput out;
			const MarkovSource source = make_source(*c.source);
			const auto family = word_family(c.target);

			Table pmf{{"l", "k", "hitting", "return"}, {}};
			Json targets = Json::array();
			for (const auto &target : family)
			{
				const PatternSolver solver(source, target);
				std::vector<std::int64_t> ks = c.k_grid;
				if (ks.empty())
					for (std::int64_t k = 1; k <= c.k_max; ++k)
						ks.push_back(k);
				const std::int64_t k_max = *std::max_element(ks.begin(), ks.end());
				const ExactPMF hit = solver.hitting_pmf(Start::stationary(), k_max);
				const ExactPMF ret = solver.return_pmf(k_max);
				for (const auto k : ks)
					pmf.rows.push_back({target.length(), k, hit.mass(k), ret.mass(k)});
				const double mu = solver.target_measure();
				Json info{{"word", target.to_string()}, {"l", target.length()}, {"mu", mu},
				          {"kac_expectation", solver.kac_expectation(k_max)}, {"kac_prediction", 1.0 / mu}};
				info["theta"] = target.period() ? Json(solver.theta_exact()) : Json();
				targets.push_back(info);
				log << "exact: word " << target.to_string() << " mu(A) = " << format_real(mu) << "\n";
			}
			out.artifacts.push_back(make_artifact("pmf", pmf, c.format));

			const LLTTable llt = llt_convergence_table(source, family, c.delta);
			out.artifacts.push_back(make_artifact("llt_return", llt_rows_table(llt.return_rows), c.format));
			out.artifacts.push_back(make_artifact("llt_hitting", llt_rows_table(llt.hitting_rows), c.format));
			const Json ret_worst = worst_by_length(llt.return_rows, family);
			const Json hit_worst = worst_by_length(llt.hitting_rows, family);
			out.summary = {{"targets", targets},
			               {"delta", c.delta},
			               {"return_max_error", ret_worst},
			               {"hitting_max_error", hit_worst}};
			if (family.size() > 1)
			{
				out.summary["return_trend_decreasing"] = strictly_decreasing(ret_worst);
				out.summary["hitting_trend_decreasing"] = strictly_decreasing(hit_worst);
			}
			return out;
		}

		ExperimentOutput verify_identities(const ExperimentConfig &c, std::ostream &log)
		{
			ExperimentOutput out;
			const PatternSolver solver(make_source(*c.source), word_family(c.target).front());
			Table t{{"identity", "parameter", "residual"}, {}};
			t.rows.push_back({"inducing", c.k_max, verify_inducing_identity(solver, c.k_max)});
			t.rows.push_back({"shift", c.shift_max, verify_shift_identity_grid(solver, c.shift_max)});
			t.rows.push_back({"discrete_relation", c.k_max, verify_discrete_relation(solver, c.k_max)});
			t.rows.push_back({"kac_relative", c.k_max, kac_discrepancy(solver, c.k_max)});
			double worst = 0;
			for (const auto &r : t.rows)
				worst = std::max(worst, r[2].get<double>());
			const double tolerance = 1e-12;
			log << "verify: max residual " << format_real(worst) << "\n";
			out.artifacts.push_back(make_artifact("identities", t, c.format));
			out.summary = {{"word", solver.target().to_string()},
			               {"max_residual", worst},
			               {"tolerance", tolerance},
			               {"passed", worst < tolerance}};
			return out;
		}

		std::vector<ReportCell> cf_cells(const ExperimentConfig &c)
		{
			const auto l = *c.target.threshold;
			const double mu = cf_rare_set_measure(l, c.target.prime);
			std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
			for (const auto k : c.cell_k)
				for (const auto a : c.cell_a)
					pairs.emplace_back(k, a);
			const double count = std::pow(static_cast<double>(pairs.size()), c.d);
			if (count > 1e5)
				throw ConfigError("cells", "d-fold cell product exceeds 10^5 cells");
			std::vector<ReportCell> cells;
			std::vector<std::size_t> idx(static_cast<std::size_t>(c.d), 0);
			for (;;)
			{
				CFPrediction p;
				p.l = l;
				p.prime_variant = c.target.prime;
				ReportCell cell;
				for (const auto i : idx)
				{
					cell.key.push_back(pairs[i].first);
					cell.key.push_back(pairs[i].second);
					p.gaps.push_back(pairs[i].first);
					p.marks.push_back(pairs[i].second);
				}
				cell.prediction = cf_joint_asymptote(p);
				if (c.d == 1)
					cell.t = mu * static_cast<double>(p.gaps[0]);
				cells.push_back(std::move(cell));
				std::size_t pos = idx.size();
				while (pos-- > 0 && ++idx[pos] == pairs.size())
					idx[pos] = 0;
				if (pos == static_cast<std::size_t>(-1))
					break;
			}
			return cells;
		}

		Table marginal_table(const EmpiricalPMF &pmf, std::size_t index, const char *name)
		{
			Table t{{name, "count", "estimate"}, {}};
			for (const auto &[v, n] : pmf.marginal(index))
				t.rows.push_back({v, n, static_cast<double>(n) / static_cast<double>(pmf.trials)});
			return t;
		}

		FirstPassageOptions replica_options(const ExperimentConfig &c)
		{
			FirstPassageOptions o;
			o.replicas = c.replicas;
			o.d = c.d;
			o.max_steps = c.max_steps;
			o.seed = c.seed;
			o.workers = c.workers;
			o.mark_cap = static_cast<Digit>(c.mark_cap);
			return o;
		}

		ErgodicResult ergodic_run(const ExperimentConfig &c, const BranchSystem &system, const TargetScan &target)
		{
			ErgodicOptions eo;
			eo.min_hits = c.min_hits;
			return estimate_return_law_ergodic(system, target, c.seed, c.stream_length, c.streams, eo);
		}

		Json ergodic_summary(const ErgodicResult &r, double mu)
		{
			return {{"estimator", "ergodic"},
			        {"hits", r.hits},
			        {"positions", r.positions},
			        {"hit_rate", r.hit_rate},
			        {"mu_exact", mu},
			        {"mean_gap", r.mean_gap.mean},
			        {"mean_gap_standard_error", r.mean_gap.standard_error},
			        {"kac_prediction", 1.0 / mu},
			        {"mean_gap_relative_error", std::abs(r.mean_gap.mean * mu - 1.0)}};
		}

		ExperimentOutput simulate_cf(const ExperimentConfig &c, std::ostream &log)
		{
			ExperimentOutput out;
			const auto system = BranchSystem::gauss();
			const TargetScan target = scan_target(c.target);
			const double mu = exact_threshold_measure(c.target);
			if (c.estimator == "ergodic")
			{
				const auto r = ergodic_run(c, system, target);
				Table t{{"gap", "count", "frequency", "prediction"}, {}};
				for (const auto &[key, n] : r.gaps.counts)
					t.rows.push_back({key[0], n, static_cast<double>(n) / static_cast<double>(r.gaps.trials),
					                  mu * std::exp(-mu * static_cast<double>(key[0]))});
				out.artifacts.push_back(make_artifact("gaps", t, c.format));
				out.summary = ergodic_summary(r, mu);
				log << "simulate: " << r.hits << " hits, mean gap " << format_real(r.mean_gap.mean) << "\n";
				return out;
			}
			const auto cells = cf_cells(c);
			const auto r = estimate_first_passage(system, target, replica_options(c));
			std::vector<std::string> names;
			for (int j = 1; j <= c.d; ++j)
			{
				names.push_back("k" + std::to_string(j));
				names.push_back("a" + std::to_string(j));
			}
			ReportPolicy policy;
			policy.delta = c.delta;
			const LLTReport report = llt_report(r.pmf, cells, names, policy);
			out.artifacts.push_back(make_artifact("report", report_table(report), c.format));
			out.artifacts.push_back(make_artifact("gaps", marginal_table(r.pmf, 0, "k"), c.format));
			out.artifacts.push_back(make_artifact("marks", marginal_table(r.pmf, 1, "a"), c.format));
			out.summary = {{"estimator", "replica"},
			               {"replicas", r.pmf.trials},
			               {"censored", r.pmf.censored},
			               {"censoring_fraction", r.pmf.censoring_fraction()},
			               {"censoring_flagged", r.censoring_flagged},
			               {"mu_exact", mu},
			               {"mu_asymptotic", cf_rare_set_measure(*c.target.threshold, c.target.prime)},
			               {"summary_cells", report.summary_cells},
			               {"max_relative_error", report.summary_cells ? Json(report.summary) : Json()}};
			log << "simulate: " << r.pmf.trials << " replicas in " << r.seconds << " s\n";
			return out;
		}

		ExperimentOutput simulate_doubling(const ExperimentConfig &c, std::ostream &log)
		{
			ExperimentOutput out;
			const auto system = BranchSystem::doubling();
			const TargetScan target = scan_target(c.target);
			const PatternSolver solver(MarkovSource::fair_bits(), PatternTarget::parse(*c.target.word));
			const double mu = solver.target_measure();

			if (c.estimator == "ergodic")
			{
				const auto r = ergodic_run(c, system, target);
				const std::int64_t k_max = std::max<std::int64_t>(1, r.gaps.counts.empty() ? 1 : r.gaps.counts.rbegin()->first[0]);
				const ExactPMF exact = solver.return_pmf(k_max);
				Table t{{"gap", "count", "frequency", "standard_error", "exact", "z"}, {}};
				double worst_z = 0;
				for (const auto &[key, n] : r.gaps.counts)
				{
					const auto f = gap_frequency(r, key[0]);
					const double z = f.standard_error > 0 ? (f.mean - exact.mass(key[0])) / f.standard_error : 0.0;
					worst_z = std::max(worst_z, std::abs(z));
					t.rows.push_back({key[0], n, f.mean, f.standard_error, exact.mass(key[0]), z});
				}
				out.artifacts.push_back(make_artifact("gaps", t, c.format));
				out.summary = ergodic_summary(r, mu);
				out.summary["max_abs_z"] = worst_z;
				log << "simulate: " << r.hits << " hits, mean gap " << format_real(r.mean_gap.mean) << "\n";
				return out;
			}

			const auto r = estimate_first_passage(system, target, replica_options(c));
			const auto n = r.pmf.trials;
			if (c.d == 1)
			{
				const ExactPMF exact = solver.hitting_pmf(Start::stationary(), c.max_steps);
				Table t{{"k", "count", "N", "estimate", "exact", "z"}, {}};
				std::size_t banded = 0, inside = 0;
				const std::int64_t chi_k = std::min<std::int64_t>(30, c.max_steps);
				std::vector<std::uint64_t> obs;
				std::vector<double> prob;
				std::uint64_t rest_obs = n;
				double rest_p = 1.0;
				for (std::int64_t k = 1; k <= c.max_steps; ++k)
				{
					const auto cnt = r.pmf.count({k});
					const double p = exact.mass(k);
					const double sigma = binomial_sigma(p, n);
					const double z = sigma > 0 ? (static_cast<double>(cnt) - p * static_cast<double>(n)) / sigma : 0.0;
					if (p * static_cast<double>(n) >= 100)
					{
						++banded;
						inside += std::abs(z) <= 4.0;
					}
					t.rows.push_back({k, cnt, n, static_cast<double>(cnt) / static_cast<double>(n), p, z});
					if (k <= chi_k)
					{
						obs.push_back(cnt);
						prob.push_back(p);
						rest_obs -= cnt;
						rest_p -= p;
					}
				}
				obs.push_back(rest_obs);
				prob.push_back(std::max(0.0, rest_p));
				const auto chi = chi_square_test(obs, prob);
				out.artifacts.push_back(make_artifact("pmf", t, c.format));
				out.summary = {{"estimator", "replica"},       {"replicas", n},
				               {"censored", r.pmf.censored},   {"censoring_flagged", r.censoring_flagged},
				               {"banded_cells", banded},       {"cells_within_4_sigma", inside},
				               {"chi_square", chi.statistic},  {"chi_square_dof", chi.dof},
				               {"chi_square_p_value", chi.p_value}};
			}
			else
			{
				std::vector<std::string> header;
				for (int j = 1; j <= c.d; ++j)
					header.push_back("k" + std::to_string(j));
				for (const char *h : {"count", "N", "estimate", "exact"})
					header.emplace_back(h);
				Table t{header, {}};
				for (const auto &[key, cnt] : r.pmf.counts)
				{
					std::vector<Json> row(key.begin(), key.end());
					row.emplace_back(cnt);
					row.emplace_back(n);
					row.emplace_back(static_cast<double>(cnt) / static_cast<double>(n));
					row.emplace_back(solver.consecutive_joint_pmf(key, true));
					t.rows.push_back(std::move(row));
				}
				out.artifacts.push_back(make_artifact("joint", t, c.format));
				out.summary = {{"estimator", "replica"},
				               {"replicas", n},
				               {"censored", r.pmf.censored},
				               {"censoring_flagged", r.censoring_flagged}};
			}
			log << "simulate: " << n << " replicas in " << r.seconds << " s\n";
			return out;
		}

		ExperimentOutput counterexample(const ExperimentConfig &c, std::ostream &log)
		{
			ExperimentOutput out;
			if (c.source)
			{
				const auto rep = counterexample_pruned_target(make_source(*c.source),
				                                              PatternTarget::parse(*c.target.word, c.target.period),
				                                              c.k_prune, c.budget);
				Table t{{"t", "return_mass"}, {}};
				for (std::size_t i = 0; i < rep.return_masses.size(); ++i)
					t.rows.push_back({static_cast<std::int64_t>(i + 1), rep.return_masses[i]});
				out.artifacts.push_back(make_artifact("pruned", t, c.format));
				const double diff = std::abs(rep.measure_ratio - rep.measure_ratio_expected);
				out.summary = {{"mode", "exact"},
				               {"k_prune", rep.k},
				               {"measure_ratio", rep.measure_ratio},
				               {"measure_ratio_expected", rep.measure_ratio_expected},
				               {"measure_ratio_error", diff},
				               {"return_mass_at_k", rep.return_mass_at_k},
				               {"passed", diff <= 1e-10 && rep.return_mass_at_k == 0.0}};
				log << "counterexample: mu(B)/mu(A) = " << format_real(rep.measure_ratio) << "\n";
				return out;
			}
			const auto system = BranchSystem::from_name(*c.system);
			PrunedDemoOptions o;
			o.seed = c.seed;
			o.stream_length = c.stream_length;
			o.streams = c.streams;
			o.replicas = c.replicas;
			o.workers = c.workers;
			o.ergodic.min_hits = c.min_hits;
			const auto r = demo_pruned_return(system, scan_target(c.target), c.k_prune, o);
			Table t{{"k_prune", "a_hits", "b_hits", "b_fraction", "b_fraction_se", "b_returns", "b_returns_at_k",
			         "return_at_k", "return_at_k_ci_low", "return_at_k_ci_high", "z"},
			        {}};
			t.rows.push_back({r.k, r.a_hits, r.b_hits, r.b_fraction.mean, r.b_fraction.standard_error, r.b_returns,
			                  r.b_returns_at_k, r.return_at_k, r.return_at_k_ci.first, r.return_at_k_ci.second,
			                  r.z_score});
			out.artifacts.push_back(make_artifact("pruned", t, c.format));
			out.summary = {{"mode", "monte-carlo"},
			               {"k_prune", r.k},
			               {"b_fraction", r.b_fraction.mean},
			               {"expected_b_fraction", 1.0 - r.return_at_k},
			               {"z_score", r.z_score},
			               {"b_returns_at_k", r.b_returns_at_k},
			               {"passed", r.consistent && r.b_returns_at_k == 0}};
			log << "counterexample: " << r.b_returns << " B-returns, " << r.b_returns_at_k << " at k\n";
			return out;
		}
	} // namespace

	ExperimentOutput run_experiment(const ExperimentConfig &config, std::ostream &log)
	{
		if (config.experiment == "exact-markov")
			return exact_markov(config, log);
		if (config.experiment == "verify-identities")
			return verify_identities(config, log);
		if (config.experiment == "simulate-cf")
			return simulate_cf(config, log);
		if (config.experiment == "simulate-doubling")
			return simulate_doubling(config, log);
		return counterexample(config, log);
	}
} // namespace lltcli
