#pragma once

#include <cstdint>
#include <span>

#include "lltlab/types.hpp"

namespace lltlab
{
	/// Law of an integer hitting time phi >= support_start:
	/// masses[i] = P(phi = support_start + i) for k up to k_max, tail = P(phi > k_max).
	/// `total` is the mass of the initial distribution (1 for probabilities).
	struct ExactPMF
	{
		std::int64_t support_start = 1;
		std::vector<double> masses;
		double tail = 0.0;
		double total = 1.0;

		std::int64_t k_max() const { return support_start + static_cast<std::int64_t>(masses.size()) - 1; }

		/// P(phi = k), zero outside the tabulated range.
		double mass(std::int64_t k) const
		{
			if (k < support_start || k > k_max())
				return 0.0;
			return masses[static_cast<std::size_t>(k - support_start)];
		}

		/// P(phi > k) for 0 <= k <= k_max, with compensated accumulation.
		double survival(std::int64_t k) const;

		/// |sum(masses) + tail - total|
		double balance_error() const;
	};

	/// Finite chain split by a target set. avoid_t = Q^T holds the transitions
	/// that land outside the target, enter_t = R^T those that land inside, so a
	/// column vector of masses v advances as Q^T v and the entering mass is
	/// sum(R^T v).
	struct AbsorptionChain
	{
		SparseMatrix avoid_t;
		SparseMatrix enter_t;
		std::vector<char> in_target;

		Index size() const { return avoid_t.rows(); }

		/// Full one-step evolution P^T v = (Q^T + R^T) v.
		VectorXd evolve(const VectorXd &v) const { return avoid_t * v + enter_t * v; }
	};

	/// Builds the split chain from a row-stochastic sparse transition list.
	AbsorptionChain make_absorption_chain(const std::vector<Eigen::Triplet<double>> &transitions, Index size,
	                                      std::vector<char> in_target);

	struct FirstPassage
	{
		ExactPMF pmf;
		/// Q^{k_max} applied to the initial vector: the surviving sub-distribution.
		VectorXd survivor;
	};

	/// Iterates the substochastic restriction for k = 1..k_max. Masses are
	/// accumulated with compensated summation; a mass-balance drift above 1e-9
	/// raises NumericError.
	FirstPassage first_passage(const AbsorptionChain &chain, const VectorXd &initial, std::int64_t k_max);

	/// x = (I - Q)^{-1} 1, so that v . x = sum_{n >= 0} P_v(phi > n).
	VectorXd expected_absorption_steps(const AbsorptionChain &chain);
} // namespace lltlab
