#include "lltlab/llt_table.hpp"

#include <algorithm>

#include "lltlab/csv.hpp"
#include "lltlab/theory.hpp"

namespace lltlab
{
	std::vector<std::int64_t> llt_k_grid(double mu, double delta)
	{
		if (!(delta > 0.0 && delta <= 1.0))
			throw InvalidArgument("llt_k_grid: delta must lie in (0, 1]");
		if (!(mu > 0.0 && mu < 1.0))
			throw InvalidArgument("llt_k_grid: mu must lie in (0, 1)");
		const double lo = std::log10(delta / mu);
		const double hi = std::log10(1.0 / (delta * mu));
		std::vector<std::int64_t> grid;
		const int steps = std::max(0, static_cast<int>(std::ceil((hi - lo) * 32.0 - 1e-9)));
		for (int i = 0; i <= steps; ++i)
		{
			const double e = steps == 0 ? lo : lo + (hi - lo) * i / steps;
			const auto k = static_cast<std::int64_t>(std::llround(std::pow(10.0, e)));
			const double t = mu * static_cast<double>(std::max<std::int64_t>(k, 1));
			// rounding may leave the window at its ends
			if (k >= 1 && t >= delta * (1 - 1e-12) && t <= (1 + 1e-12) / delta)
				grid.push_back(k);
		}
		grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
		return grid;
	}

	LLTTable llt_convergence_table(const MarkovSource &source, const std::vector<PatternTarget> &family,
	                               double delta)
	{
		LLTTable table;
		table.delta = delta;
		for (const PatternTarget &target : family)
		{
			const PatternSolver solver(source, target);
			const double mu = solver.target_measure();
			const double theta = target.period() ? solver.theta_exact() : 1.0;
			const ExponentialLaw<double> law(theta);
			const auto grid = llt_k_grid(mu, delta);
			if (grid.empty())
				continue;
			const std::int64_t k_max = grid.back();
			const ExactPMF ret = solver.return_pmf(k_max);
			const ExactPMF hit = solver.hitting_pmf(Start::stationary(), k_max);
			for (const auto k : grid)
			{
				const double t = mu * static_cast<double>(k);
				LLTRow r{target.length(), k, t, ret.mass(k), return_density(law, t) * mu, 0.0};
				r.ratio = r.exact / r.predicted;
				table.return_rows.push_back(r);
				LLTRow h{target.length(), k, t, hit.mass(k), hitting_density(law, t) * mu, 0.0};
				h.ratio = h.exact / h.predicted;
				table.hitting_rows.push_back(h);
			}
		}
		return table;
	}

	void write_llt_csv(std::ostream &os, const std::vector<LLTRow> &rows)
	{
		os << "l,k,t,exact,predicted,ratio\n";
		for (const auto &r : rows)
			os << r.l << ',' << r.k << ',' << format_real(r.t) << ',' << format_real(r.exact) << ','
			   << format_real(r.predicted) << ',' << format_real(r.ratio) << '\n';
	}

	void write_llt_json(std::ostream &os, const std::vector<LLTRow> &rows)
	{
		os << "[";
		for (std::size_t i = 0; i < rows.size(); ++i)
		{
			const auto &r = rows[i];
			os << (i ? ",\n " : "\n ") << "{\"l\": " << r.l << ", \"k\": " << r.k << ", \"t\": " << format_real(r.t)
			   << ", \"exact\": " << format_real(r.exact) << ", \"predicted\": " << format_real(r.predicted)
			   << ", \"ratio\": " << format_real(r.ratio) << "}";
		}
		os << "\n]\n";
	}
} // namespace lltlab
