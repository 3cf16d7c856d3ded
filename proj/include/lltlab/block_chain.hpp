#pragma once

#include <cstdint>

#include "lltlab/absorption.hpp"
#include "lltlab/markov_source.hpp"
#include "lltlab/pattern.hpp"

namespace lltlab
{
	/// Reference backend: the chain on the last l symbols (S^l states), with the
	/// target being the single block equal to the word. Independent of the
	/// prefix automaton; meant for cross-validation on short words.
	class BlockChain
	{
	public:
		BlockChain(const MarkovSource &source, const PatternTarget &target);

		Index size() const { return chain_.size(); }
		const AbsorptionChain &chain() const { return chain_; }

		/// mu-law of (x_0 .. x_{l-1}), encoded base S with x_0 most significant.
		const VectorXd &stationary_law() const { return stationary_; }
		Index target_block() const { return target_block_; }

		ExactPMF hitting_pmf(std::int64_t k_max) const;
		ExactPMF return_pmf(std::int64_t k_max) const;

	private:
		AbsorptionChain chain_;
		VectorXd stationary_;
		Index target_block_ = 0;
	};

	/// Upper bound on S^l for the block chain.
	constexpr double kBlockChainBudget = 4194304.0;
} // namespace lltlab
