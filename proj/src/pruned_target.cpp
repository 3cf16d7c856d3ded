#include "lltlab/pruned_target.hpp"

namespace lltlab
{
	// Layout: slot (age a in [0, k), state) holds the mass with a pending
	// A-occurrence seen a steps ago; slot k is "nothing pending" (the start was
	// settled as B and no further occurrence yet). At step t the pending
	// occurrence happened at time t - a, so a == t marks the starting one.
	PrunedTargetReport counterexample_pruned_target(const PatternSolver &solver, std::int64_t k, double budget)
	{
		if (k < 1)
			throw InvalidArgument("counterexample_pruned_target: k must be >= 1");
		const ProductChain &pc = solver.product();
		const Index n = pc.size();
		const double cost = static_cast<double>(k) * static_cast<double>(n) * static_cast<double>(n);
		if (cost > budget)
			throw BudgetExceeded("counterexample_pruned_target: k * states^2 = " + std::to_string(cost) +
			                     " exceeds the budget");

		// forward adjacency
		std::vector<std::vector<std::pair<Index, double>>> out(static_cast<std::size_t>(n));
		for (const auto &t : pc.transitions)
			out[static_cast<std::size_t>(t.row())].emplace_back(t.col(), t.value());
		const auto &in_target = pc.chain.in_target;

		const auto slots = static_cast<std::size_t>(k + 1);
		auto at = [n](std::size_t slot, Index s) { return slot * static_cast<std::size_t>(n) + static_cast<std::size_t>(s); };
		std::vector<double> cur(slots * static_cast<std::size_t>(n), 0.0), nxt(cur.size());
		const VectorXd start = solver.target_law();
		for (Index s = 0; s < n; ++s)
			cur[at(0, s)] = start(s);

		std::vector<double> bins(static_cast<std::size_t>(k) + 1, 0.0);
		CompensatedSum discarded;
		const std::int64_t steps = 3 * k;
		for (std::int64_t t = 0; t < steps; ++t)
		{
			std::fill(nxt.begin(), nxt.end(), 0.0);
			for (std::size_t slot = 0; slot < slots; ++slot)
				for (Index s = 0; s < n; ++s)
				{
					const double w = cur[at(slot, s)];
					if (w == 0.0)
						continue;
					for (const auto &[to, p] : out[static_cast<std::size_t>(s)])
					{
						const double m = w * p;
						const bool hit = in_target[static_cast<std::size_t>(to)];
						if (slot == slots - 1)
						{
							nxt[at(hit ? 0 : slot, to)] += m;
							continue;
						}
						const auto age = static_cast<std::int64_t>(slot);
						const std::int64_t pending_time = t - age;
						const std::int64_t gap = age + 1;
						if (hit && gap < k)
						{
							// pending occurrence is in B
							if (pending_time >= 1)
							{
								if (pending_time <= k)
									bins[static_cast<std::size_t>(pending_time)] += m;
							}
							else
								nxt[at(0, to)] += m;
						}
						else if (hit)
						{
							// gap == k: pending occurrence is not in B
							if (pending_time == 0)
								discarded += m;
							else
								nxt[at(0, to)] += m;
						}
						else if (gap == k)
						{
							// gap > k: pending occurrence is in B
							if (pending_time == 0)
								nxt[at(slots - 1, to)] += m;
							else if (pending_time <= k)
								bins[static_cast<std::size_t>(pending_time)] += m;
						}
						else
							nxt[at(slot + 1, to)] += m;
					}
				}
			cur.swap(nxt);
		}

		PrunedTargetReport report;
		report.k = k;
		report.measure_ratio = 1.0 - discarded.value();
		report.measure_ratio_expected = 1.0 - solver.return_pmf(k).mass(k);
		report.return_masses.resize(static_cast<std::size_t>(k));
		if (report.measure_ratio > 0.0)
			for (std::int64_t i = 1; i <= k; ++i)
				report.return_masses[static_cast<std::size_t>(i - 1)] = bins[static_cast<std::size_t>(i)] / report.measure_ratio;
		report.return_mass_at_k = report.return_masses.back();
		return report;
	}

	PrunedTargetReport counterexample_pruned_target(const MarkovSource &source, const PatternTarget &target,
	                                                std::int64_t k, double budget)
	{
		return counterexample_pruned_target(PatternSolver(source, target), k, budget);
	}
} // namespace lltlab
