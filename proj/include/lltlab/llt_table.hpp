#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "lltlab/pattern_solver.hpp"

namespace lltlab
{
	struct LLTRow
	{
		int l = 0;
		std::int64_t k = 0;
		double t = 0.0;
		double exact = 0.0;
		double predicted = 0.0;
		double ratio = 0.0;
	};

	/// Exact masses against theta^2 e^{-theta t} mu (return side) and
	/// theta e^{-theta t} mu (hitting side), t = mu(A_l) k.
	struct LLTTable
	{
		double delta = 0.0;
		std::vector<LLTRow> return_rows;
		std::vector<LLTRow> hitting_rows;
	};

	/// Geometric grid with 32 points per decade over [delta/mu, 1/(delta mu)],
	/// rounded to integers >= 1 and deduplicated.
	std::vector<std::int64_t> llt_k_grid(double mu, double delta);

	/// theta is taken from the period hint when present and is 1 otherwise.
	LLTTable llt_convergence_table(const MarkovSource &source, const std::vector<PatternTarget> &family,
	                               double delta);

	/// Header `l,k,t,exact,predicted,ratio`.
	void write_llt_csv(std::ostream &os, const std::vector<LLTRow> &rows);
	/// JSON array of row records.
	void write_llt_json(std::ostream &os, const std::vector<LLTRow> &rows);
} // namespace lltlab
