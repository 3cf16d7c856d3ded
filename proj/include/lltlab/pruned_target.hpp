#pragma once

#include <cstdint>
#include <vector>

#include "lltlab/pattern_solver.hpp"

namespace lltlab
{
	/// Exact comparison for B = A cap {phi_A != k}.
	struct PrunedTargetReport
	{
		std::int64_t k = 0;
		/// mu(B)/mu(A), from the pruned-chain computation.
		double measure_ratio = 0.0;
		/// 1 - mu_A(phi_A = k), from the return law.
		double measure_ratio_expected = 0.0;
		/// mu_B(phi_B = k); zero by construction of B.
		double return_mass_at_k = 0.0;
		/// return_masses[t-1] = mu_B(phi_B = t), t = 1..k
		std::vector<double> return_masses;
	};

	/// Follows occurrences of A on the product chain, holding the most recent
	/// one until its next gap decides whether it belongs to B. Refuses with
	/// BudgetExceeded when k * states^2 exceeds `budget`.
	PrunedTargetReport counterexample_pruned_target(const PatternSolver &solver, std::int64_t k,
	                                                double budget = 1e9);
	PrunedTargetReport counterexample_pruned_target(const MarkovSource &source, const PatternTarget &target,
	                                                std::int64_t k, double budget = 1e9);
} // namespace lltlab
