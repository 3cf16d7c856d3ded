#include "lltlab/identities.hpp"

#include <algorithm>

namespace lltlab
{
	double verify_inducing_identity(const PatternSolver &solver, std::int64_t k_max)
	{
		const ExactPMF hit = solver.hitting_pmf(Start::stationary(), k_max);
		const ExactPMF ret = solver.return_pmf(k_max);
		const double mu = solver.target_measure();
		double worst = 0.0;
		CompensatedSum below; // sum_{j<k} r_j
		for (std::int64_t k = 1; k <= k_max; ++k)
		{
			const double rhs = mu * (1.0 - below.value());
			worst = std::max(worst, std::abs(hit.mass(k) - rhs));
			below += ret.mass(k);
		}
		return worst;
	}

	double verify_inducing_identity(const MarkovSource &source, const PatternTarget &target, std::int64_t k_max)
	{
		return verify_inducing_identity(PatternSolver(source, target), k_max);
	}

	namespace
	{
		// Forward evolution for j steps splitting mass by "an occurrence was seen".
		VectorXd seen_after(const PatternSolver &solver, std::int64_t j)
		{
			const AbsorptionChain &c = solver.product().chain;
			VectorXd u0 = solver.stationary_law();
			VectorXd u1 = VectorXd::Zero(u0.size());
			for (std::int64_t i = 0; i < j; ++i)
			{
				VectorXd n1 = c.evolve(u1) + c.enter_t * u0;
				u0 = c.avoid_t * u0;
				u1.swap(n1);
			}
			return u1;
		}

		double passage_mass(const AbsorptionChain &c, VectorXd v, std::int64_t m)
		{
			for (std::int64_t i = 1; i < m; ++i)
				v = c.avoid_t * v;
			return (c.enter_t * v).sum();
		}
	} // namespace

	std::pair<double, double> verify_shift_identity(const PatternSolver &solver, std::int64_t j, std::int64_t m)
	{
		if (j < 1 || m < 1)
			throw InvalidArgument("verify_shift_identity: j and m must be >= 1");
		const double lhs = passage_mass(solver.product().chain, seen_after(solver, j), m);
		const ExactPMF ret = solver.return_pmf(m + j - 1);
		CompensatedSum rhs;
		for (std::int64_t i = m; i < m + j; ++i)
			rhs += ret.mass(i);
		return {lhs, solver.target_measure() * rhs.value()};
	}

	std::pair<double, double> verify_shift_identity(const MarkovSource &source, const PatternTarget &target,
	                                                std::int64_t j, std::int64_t m)
	{
		return verify_shift_identity(PatternSolver(source, target), j, m);
	}

	double verify_shift_identity_grid(const PatternSolver &solver, std::int64_t max_index)
	{
		const AbsorptionChain &c = solver.product().chain;
		const ExactPMF ret = solver.return_pmf(2 * max_index);
		const double mu = solver.target_measure();
		double worst = 0.0;
		for (std::int64_t j = 1; j <= max_index; ++j)
		{
			VectorXd v = seen_after(solver, j);
			CompensatedSum window;
			for (std::int64_t i = 1; i <= j; ++i)
				window += ret.mass(i);
			// window holds r_m + .. + r_{m+j-1}, slid forward with m
			double slide = window.value();
			for (std::int64_t m = 1; m <= max_index; ++m)
			{
				const double lhs = (c.enter_t * v).sum();
				v = c.avoid_t * v;
				worst = std::max(worst, std::abs(lhs - mu * slide));
				slide += ret.mass(m + j) - ret.mass(m);
			}
		}
		return worst;
	}

	double verify_discrete_relation(const PatternSolver &solver, std::int64_t k_max)
	{
		const ExactPMF hit = solver.hitting_pmf(Start::stationary(), k_max);
		const FirstPassage ret = solver.first_passage(Start::on_target(), k_max);
		const double mu = solver.target_measure();

		// survival[n] = P_A(phi > n), S(K) = sum_{n >= K} survival[n] with the
		// exact residual standing in for n >= k_max
		std::vector<double> survival(static_cast<std::size_t>(k_max) + 1);
		{
			CompensatedSum hit_so_far;
			for (std::int64_t n = 0; n <= k_max; ++n)
			{
				if (n > 0)
					hit_so_far += ret.pmf.mass(n);
				survival[static_cast<std::size_t>(n)] = 1.0 - hit_so_far.value();
			}
		}
		std::vector<double> tail_sum(static_cast<std::size_t>(k_max) + 1);
		CompensatedSum acc;
		acc += solver.residual_tail_sum(ret.survivor);
		tail_sum[static_cast<std::size_t>(k_max)] = acc.value();
		for (std::int64_t n = k_max - 1; n >= 0; --n)
		{
			acc += survival[static_cast<std::size_t>(n)];
			tail_sum[static_cast<std::size_t>(n)] = acc.value();
		}
		CompensatedSum lhs_hit;
		double worst = 0.0;
		for (std::int64_t K = 0; K <= k_max / 2; ++K)
		{
			if (K > 0)
				lhs_hit += hit.mass(K);
			const double lhs = 1.0 - lhs_hit.value();
			const double rhs = mu * tail_sum[static_cast<std::size_t>(K)];
			worst = std::max(worst, std::abs(lhs - rhs));
		}
		return worst;
	}

	double kac_discrepancy(const PatternSolver &solver, std::int64_t k_max)
	{
		const double expected = 1.0 / solver.target_measure();
		return std::abs(solver.kac_expectation(k_max) - expected) / expected;
	}
} // namespace lltlab
