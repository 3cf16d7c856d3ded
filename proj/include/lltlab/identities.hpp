#pragma once

#include <cstdint>
#include <utility>

#include "lltlab/pattern_solver.hpp"

namespace lltlab
{
	/// max_k |mu(phi_A = k) - mu(A cap {phi_A >= k})| over k = 1..k_max.
	double verify_inducing_identity(const PatternSolver &solver, std::int64_t k_max);
	double verify_inducing_identity(const MarkovSource &source, const PatternTarget &target, std::int64_t k_max);

	/// (mu({phi_A <= j} cap {phi_A o T^j = m}), mu(A cap {m <= phi_A < m + j})).
	std::pair<double, double> verify_shift_identity(const PatternSolver &solver, std::int64_t j, std::int64_t m);
	std::pair<double, double> verify_shift_identity(const MarkovSource &source, const PatternTarget &target,
	                                                std::int64_t j, std::int64_t m);

	/// max |lhs - rhs| of the shift identity over 1 <= j, m <= max_index.
	double verify_shift_identity_grid(const PatternSolver &solver, std::int64_t max_index);

	/// max_K |mu(phi_A > K) - mu(A) sum_{k > K} mu_A(phi_A >= k)| over
	/// K = 0..k_max/2. The right tail beyond k_max is closed exactly.
	double verify_discrete_relation(const PatternSolver &solver, std::int64_t k_max);

	/// |E_{mu_A} phi_A - 1/mu(A)|, relative to 1/mu(A).
	double kac_discrepancy(const PatternSolver &solver, std::int64_t k_max);
} // namespace lltlab
